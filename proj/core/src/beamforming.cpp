// SPDX-License-Identifier: Apache-2.0
//
// holoris - holographic self-controlled RIS simulation library
// Copyright (C) 2026 The holoris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <holoris/beamforming.hpp>
#include <holoris/errors.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace holoris
{
    namespace
    {
        void require_shape(const Grid<std::uint8_t> &states, const ArrayGeometry &geom)
        {
            if (states.rows() != geom.n_z() || states.cols() != geom.n_x())
                throw InvalidArgument("coding dimensions do not match the array geometry");
        }

        void require_front(Vec3 p, const char *what)
        {
            if (!(p.y > 0.0))
                throw InvalidArgument(std::string(what) + ": position must have y > 0");
        }

        ComplexGrid propagation_to(const ReceiverLocation &ue, const ArrayGeometry &geom)
        {
            ComplexGrid prop(geom.n_z(), geom.n_x());
            const double k0 = geom.wavenumber();
            if (const auto *dir = std::get_if<AngularLocation>(&ue))
            {
                if (!in_front_half_space(*dir))
                    throw InvalidArgument("received_power: receiver angles must satisfy |theta|, |phi| < 90 deg");
                const Vec3 u = direction_vector(*dir);
                for (std::size_t m = 1; m <= geom.n_z(); ++m)
                    for (std::size_t n = 1; n <= geom.n_x(); ++n)
                        prop(m - 1, n - 1) = std::polar(1.0, k0 * u.dot(geom.element_position(m, n)));
                return prop;
            }
            const Vec3 p = std::get<Vec3>(ue);
            require_front(p, "received_power");
            const double r_ref = p.norm();
            for (std::size_t m = 1; m <= geom.n_z(); ++m)
                for (std::size_t n = 1; n <= geom.n_x(); ++n)
                {
                    const double r = (p - geom.element_position(m, n)).norm();
                    prop(m - 1, n - 1) = std::polar(1.0 / std::max(r / r_ref, 1.0), -k0 * r);
                }
            return prop;
        }

        template <typename Reflection>
        double coherent_power(const Source &bs, const ReceiverLocation &ue, const ArrayGeometry &geom,
                              Reflection &&reflection)
        {
            const auto incident = complex_field_at_array(bs, geom);
            const auto prop = propagation_to(ue, geom);
            std::complex<double> sum = 0.0;
            for (std::size_t m = 0; m < geom.n_z(); ++m)
                for (std::size_t n = 0; n < geom.n_x(); ++n)
                    sum += incident(m, n) * reflection(m, n) * prop(m, n);
            return std::norm(sum);
        }

        double wrap_pi(double x) noexcept
        {
            return std::remainder(x, 2.0 * std::numbers::pi);
        }

        // Width of the region around `peak` where values stay >= half, linearly interpolated.
        double half_power_width(const std::vector<double> &axis, const std::vector<double> &values, std::size_t peak)
        {
            const double half = 0.5 * values[peak];
            auto crossing = [&](std::size_t inside, std::size_t outside) {
                const double t = (values[inside] - half) / (values[inside] - values[outside]);
                return axis[inside] + t * (axis[outside] - axis[inside]);
            };
            std::size_t lo = peak, hi = peak;
            while (lo > 0 && values[lo - 1] >= half)
                --lo;
            while (hi + 1 < values.size() && values[hi + 1] >= half)
                ++hi;
            if (lo == 0 || hi + 1 == values.size())
                return 0.0;
            return crossing(hi, hi + 1) - crossing(lo, lo - 1);
        }
    }

    PhaseProfile farfield_phase_profile(AngularLocation bs, AngularLocation ue, const ArrayGeometry &geom)
    {
        if (!in_front_half_space(bs) || !in_front_half_space(ue))
            throw InvalidArgument("farfield_phase_profile: angles must satisfy |theta|, |phi| < 90 deg");
        const Vec3 u = direction_vector(bs) + direction_vector(ue);
        const double k0 = geom.wavenumber();
        PhaseProfile out{RealGrid(geom.n_z(), geom.n_x())};
        for (std::size_t m = 1; m <= geom.n_z(); ++m)
            for (std::size_t n = 1; n <= geom.n_x(); ++n)
                out.values(m - 1, n - 1) = -k0 * u.dot(geom.element_position(m, n));
        return out;
    }

    PhaseProfile nearfield_phase_profile(Vec3 bs_pos, Vec3 ue_pos, const ArrayGeometry &geom)
    {
        require_front(bs_pos, "nearfield_phase_profile (bs)");
        require_front(ue_pos, "nearfield_phase_profile (ue)");
        const double k0 = geom.wavenumber();
        PhaseProfile out{RealGrid(geom.n_z(), geom.n_x())};
        for (std::size_t m = 1; m <= geom.n_z(); ++m)
            for (std::size_t n = 1; n <= geom.n_x(); ++n)
            {
                const Vec3 p = geom.element_position(m, n);
                out.values(m - 1, n - 1) = k0 * ((bs_pos - p).norm() + (ue_pos - p).norm());
            }
        return out;
    }

    CodingMatrix quantize_1bit(const PhaseProfile &profile)
    {
        CodingMatrix out{Grid<std::uint8_t>(profile.values.rows(), profile.values.cols())};
        for (std::size_t i = 0; i < profile.values.size(); ++i)
        {
            const double dist_to_zero = std::abs(wrap_pi(profile.values.data()[i]));
            const double dist_to_pi = std::numbers::pi - dist_to_zero;
            out.states.data()[i] = dist_to_zero <= dist_to_pi ? 0 : 1;
        }
        return out;
    }

    double received_power(const CodingMatrix &coding, const Source &bs, const ReceiverLocation &ue,
                          const ArrayGeometry &geom)
    {
        require_shape(coding.states, geom);
        return coherent_power(bs, ue, geom, [&](std::size_t m, std::size_t n) {
            return coding.states(m, n) ? -1.0 : 1.0;
        });
    }

    double received_power(const PhaseProfile &profile, const Source &bs, const ReceiverLocation &ue,
                          const ArrayGeometry &geom)
    {
        if (profile.values.rows() != geom.n_z() || profile.values.cols() != geom.n_x())
            throw InvalidArgument("phase profile dimensions do not match the array geometry");
        return coherent_power(bs, ue, geom, [&](std::size_t m, std::size_t n) {
            return std::polar(1.0, profile.values(m, n));
        });
    }

    AngleGrid AngleGrid::uniform(double theta_min, double theta_max, double phi_min, double phi_max, double step)
    {
        if (!(step > 0.0) || theta_max < theta_min || phi_max < phi_min)
            throw InvalidArgument("AngleGrid: invalid bounds or step");
        auto axis = [step](double lo, double hi) {
            std::vector<double> v;
            const auto count = std::size_t(std::floor((hi - lo) / step + 1e-9)) + 1;
            for (std::size_t i = 0; i < count; ++i)
                v.push_back(lo + double(i) * step);
            return v;
        };
        return {axis(theta_min, theta_max), axis(phi_min, phi_max)};
    }

    double RadiationPattern::power_db(std::size_t i, std::size_t j) const
    {
        return 10.0 * std::log10(std::max(power(i, j), 1e-300));
    }

    RadiationPattern pattern(const CodingMatrix &coding, const Source &bs, const ArrayGeometry &geom,
                             const AngleGrid &grid)
    {
        require_shape(coding.states, geom);
        if (grid.theta_deg.empty() || grid.phi_deg.empty())
            throw InvalidArgument("pattern: empty angle grid");
        for (double t : grid.theta_deg)
            if (!(std::abs(t) < 90.0))
                throw InvalidArgument("pattern: theta grid must lie within (-90, 90) deg");
        for (double p : grid.phi_deg)
            if (!(std::abs(p) < 90.0))
                throw InvalidArgument("pattern: phi grid must lie within (-90, 90) deg");

        // Reflected aperture field does not depend on the observation angle.
        const auto incident = complex_field_at_array(bs, geom);
        ComplexGrid aperture(geom.n_z(), geom.n_x());
        for (std::size_t i = 0; i < aperture.size(); ++i)
            aperture.data()[i] = coding.states.data()[i] ? -incident.data()[i] : incident.data()[i];

        const double k0 = geom.wavenumber();
        const auto positions = element_positions(geom);
        RadiationPattern out{grid, RealGrid(grid.theta_deg.size(), grid.phi_deg.size()), {}, 0.0, 0.0, 0.0};
        std::size_t pi = 0, pj = 0;
        for (std::size_t i = 0; i < grid.theta_deg.size(); ++i)
            for (std::size_t j = 0; j < grid.phi_deg.size(); ++j)
            {
                const Vec3 u = direction_vector({grid.theta_deg[i], grid.phi_deg[j]});
                std::complex<double> sum = 0.0;
                for (std::size_t e = 0; e < aperture.size(); ++e)
                    sum += aperture.data()[e] * std::polar(1.0, k0 * u.dot(positions.data()[e]));
                const double p = std::norm(sum);
                out.power(i, j) = p;
                if (p > out.peak_power)
                {
                    out.peak_power = p;
                    pi = i;
                    pj = j;
                }
            }
        out.peak = {grid.theta_deg[pi], grid.phi_deg[pj]};

        std::vector<double> theta_cut(grid.theta_deg.size()), phi_cut(grid.phi_deg.size());
        for (std::size_t i = 0; i < theta_cut.size(); ++i)
            theta_cut[i] = out.power(i, pj);
        for (std::size_t j = 0; j < phi_cut.size(); ++j)
            phi_cut[j] = out.power(pi, j);
        out.hpbw_theta_deg = half_power_width(grid.theta_deg, theta_cut, pi);
        out.hpbw_phi_deg = half_power_width(grid.phi_deg, phi_cut, pj);
        return out;
    }

    LinkGain link_gain(const CodingMatrix &coding, const CodingMatrix &baseline, const Source &bs,
                       const ReceiverLocation &ue, const ArrayGeometry &geom)
    {
        // -120 dB below a single element counts as no baseline signal.
        constexpr double power_floor = 1e-12;
        const double p = received_power(coding, bs, ue, geom);
        double p0 = received_power(baseline, bs, ue, geom);
        LinkGain out;
        if (p0 < power_floor)
        {
            p0 = power_floor;
            out.baseline_floored = true;
        }
        out.gain_db = 10.0 * std::log10(std::max(p, 1e-300) / p0);
        return out;
    }
}
