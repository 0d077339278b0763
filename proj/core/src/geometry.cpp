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

#include <holoris/geometry.hpp>
#include <holoris/errors.hpp>

#include <algorithm>
#include <string>

namespace holoris
{
    ArrayGeometry::ArrayGeometry(std::size_t n_z, std::size_t n_x, double d_z_m, double d_x_m, double carrier_hz)
        : n_z_(n_z), n_x_(n_x), d_z_(d_z_m), d_x_(d_x_m), carrier_hz_(carrier_hz)
    {
        if (n_z < 2 || n_x < 2)
            throw InvalidArgument("ArrayGeometry: n_z and n_x must be at least 2");
        if (!(d_z_m > 0.0) || !(d_x_m > 0.0) || !std::isfinite(d_z_m) || !std::isfinite(d_x_m))
            throw InvalidArgument("ArrayGeometry: element pitch must be positive and finite");
        if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
            throw InvalidArgument("ArrayGeometry: carrier frequency must be positive and finite");
    }

    ArrayGeometry ArrayGeometry::reference_panel()
    {
        return ArrayGeometry(32, 32, 0.02, 0.02, 3.5e9);
    }

    Vec3 ArrayGeometry::element_position(std::size_t m, std::size_t n) const noexcept
    {
        const double x = (double(n) - 0.5 * double(n_x_ + 1)) * d_x_;
        const double z = (double(m) - 0.5 * double(n_z_ + 1)) * d_z_;
        return {x, 0.0, z};
    }

    bool in_front_half_space(AngularLocation loc) noexcept
    {
        return std::abs(loc.theta_deg) < 90.0 && std::abs(loc.phi_deg) < 90.0;
    }

    Vec3 direction_vector(AngularLocation loc) noexcept
    {
        const double th = deg2rad(loc.theta_deg);
        const double ph = deg2rad(loc.phi_deg);
        return {std::cos(th) * std::sin(ph), std::cos(th) * std::cos(ph), -std::sin(th)};
    }

    Grid<Vec3> element_positions(const ArrayGeometry &geom)
    {
        Grid<Vec3> out(geom.n_z(), geom.n_x());
        for (std::size_t m = 1; m <= geom.n_z(); ++m)
            for (std::size_t n = 1; n <= geom.n_x(); ++n)
                out(m - 1, n - 1) = geom.element_position(m, n);
        return out;
    }

    SpatialFrequencyPair spatial_frequencies(AngularLocation loc, const ArrayGeometry &geom)
    {
        if (!in_front_half_space(loc))
            throw InvalidArgument("spatial_frequencies: angles must satisfy |theta|, |phi| < 90 deg");
        const double th = deg2rad(loc.theta_deg);
        const double ph = deg2rad(loc.phi_deg);
        const double k0 = geom.wavenumber();
        return {-k0 * geom.d_z() * std::sin(th), k0 * geom.d_x() * std::cos(th) * std::sin(ph)};
    }

    bool is_propagating(SpatialFrequencyPair freqs, const ArrayGeometry &geom) noexcept
    {
        const double k0 = geom.wavenumber();
        const double uz = freqs.omega_z / (k0 * geom.d_z());
        const double ux = freqs.omega_x / (k0 * geom.d_x());
        return ux * ux + uz * uz <= 1.0 + 1e-12;
    }

    AngularLocation angles_from_frequencies(SpatialFrequencyPair freqs, const ArrayGeometry &geom)
    {
        constexpr double slack = 1e-12;
        const double k0 = geom.wavenumber();
        const double sin_theta = -freqs.omega_z / (k0 * geom.d_z());
        if (!(std::abs(sin_theta) <= 1.0 + slack))
            throw InfeasibleFrequency("angles_from_frequencies: |sin(theta)| = " + std::to_string(std::abs(sin_theta)) + " > 1");
        const double theta = std::asin(std::clamp(sin_theta, -1.0, 1.0));
        const double cos_theta = std::cos(theta);
        const double sin_phi = cos_theta > 0.0 ? freqs.omega_x / (k0 * geom.d_x() * cos_theta)
                                               : (freqs.omega_x == 0.0 ? 0.0 : 2.0);
        if (!(std::abs(sin_phi) <= 1.0 + slack))
            throw InfeasibleFrequency("angles_from_frequencies: |sin(phi)| = " + std::to_string(std::abs(sin_phi)) + " > 1");
        // + 0.0 maps -0 to +0
        return {rad2deg(theta) + 0.0, rad2deg(std::asin(std::clamp(sin_phi, -1.0, 1.0))) + 0.0};
    }

    double wrap_degrees(double deg) noexcept
    {
        double w = std::fmod(deg + 180.0, 360.0);
        if (w < 0.0)
            w += 360.0;
        return w - 180.0;
    }

    double angular_error_deg(AngularLocation estimate, AngularLocation truth) noexcept
    {
        return std::hypot(wrap_degrees(estimate.theta_deg - truth.theta_deg),
                          wrap_degrees(estimate.phi_deg - truth.phi_deg));
    }
}
