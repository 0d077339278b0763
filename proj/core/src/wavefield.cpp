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

#include <holoris/wavefield.hpp>
#include <holoris/errors.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <random>

namespace holoris
{
    Source Source::far(AngularLocation dir, double amplitude, double phase_rad, std::uint32_t tag)
    {
        return Source{FarField{dir}, amplitude, phase_rad, tag};
    }

    Source Source::near(Vec3 position, double amplitude, double phase_rad, std::uint32_t tag)
    {
        return Source{NearField{position}, amplitude, phase_rad, tag};
    }

    void Source::validate() const
    {
        if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
            throw InvalidArgument("Source: amplitude must be non-negative and finite");
        if (!std::isfinite(phase_rad))
            throw InvalidArgument("Source: phase must be finite");
        if (const auto *ff = std::get_if<FarField>(&kind))
        {
            if (!in_front_half_space(ff->direction))
                throw InvalidArgument("Source: far-field angles must satisfy |theta|, |phi| < 90 deg");
        }
        else if (!(std::get<NearField>(kind).position.y > 0.0))
            throw InvalidArgument("Source: near-field position must have y > 0");
    }

    void DetectorModel::validate() const
    {
        if (!(noise_std >= 0.0))
            throw InvalidArgument("DetectorModel: noise_std must be >= 0");
        if (!(phase_jitter_std >= 0.0))
            throw InvalidArgument("DetectorModel: phase_jitter_std must be >= 0");
        if (!(floor >= 0.0))
            throw InvalidArgument("DetectorModel: floor must be >= 0");
        if (!(ceiling > floor) || !std::isfinite(ceiling))
            throw InvalidArgument("DetectorModel: ceiling must be finite and greater than floor");
    }

    ComplexGrid complex_field_at_array(const Source &src, const ArrayGeometry &geom)
    {
        src.validate();
        ComplexGrid field(geom.n_z(), geom.n_x());

        if (const auto *ff = std::get_if<FarField>(&src.kind))
        {
            const auto w = spatial_frequencies(ff->direction, geom);
            for (std::size_t m = 1; m <= geom.n_z(); ++m)
                for (std::size_t n = 1; n <= geom.n_x(); ++n)
                    field(m - 1, n - 1) = std::polar(src.amplitude, src.phase_rad + double(m) * w.omega_z + double(n) * w.omega_x);
            return field;
        }

        // Spherical wave, spreading normalized to unity at the distance of the array center.
        const Vec3 p_src = std::get<NearField>(src.kind).position;
        const double r_ref = p_src.norm();
        const double k0 = geom.wavenumber();
        for (std::size_t m = 1; m <= geom.n_z(); ++m)
            for (std::size_t n = 1; n <= geom.n_x(); ++n)
            {
                const double r = (p_src - geom.element_position(m, n)).norm();
                const double spread = std::max(r / r_ref, 1.0);
                field(m - 1, n - 1) = std::polar(src.amplitude / spread, src.phase_rad - k0 * r);
            }
        return field;
    }

    namespace
    {
        // Spatial signature of a source: plane-wave frequencies, or the point of a spherical wave.
        std::variant<SpatialFrequencyPair, Vec3> signature(const Source &s, const ArrayGeometry &geom)
        {
            if (const auto *ff = std::get_if<FarField>(&s.kind))
                return spatial_frequencies(ff->direction, geom);
            return std::get<NearField>(s.kind).position;
        }

        bool same_spatial_frequency(const std::vector<const Source *> &group, const ArrayGeometry &geom)
        {
            const auto first = signature(*group.front(), geom);
            return std::all_of(group.begin(), group.end(),
                               [&](const Source *s) { return signature(*s, geom) == first; });
        }
    }

    std::vector<Hologram> synthesize_hologram(std::span<const Source> sources, const ArrayGeometry &geom,
                                              const DetectorModel &det, std::uint64_t seed)
    {
        det.validate();
        std::map<std::uint32_t, std::vector<const Source *>> by_tag;
        for (const auto &s : sources)
        {
            s.validate();
            by_tag[s.frequency_tag].push_back(&s);
        }

        std::vector<Hologram> out;
        out.reserve(by_tag.size());
        for (const auto &[tag, group] : by_tag)
        {
            std::seed_seq seq{std::uint64_t(seed & 0xffffffffu), std::uint64_t(seed >> 32), std::uint64_t(tag)};
            std::mt19937_64 rng(seq);
            std::normal_distribution<double> gauss(0.0, 1.0);

            // Carrier phase error between the sources: applied to the last one of the tag.
            const double jitter = det.phase_jitter_std > 0.0 ? det.phase_jitter_std * gauss(rng) : 0.0;

            ComplexGrid total(geom.n_z(), geom.n_x());
            for (std::size_t i = 0; i < group.size(); ++i)
            {
                Source s = *group[i];
                if (i + 1 == group.size() && group.size() > 1)
                    s.phase_rad += jitter;
                const auto f = complex_field_at_array(s, geom);
                for (std::size_t j = 0; j < total.size(); ++j)
                    total.data()[j] += f.data()[j];
            }

            RealGrid values(geom.n_z(), geom.n_x());
            for (std::size_t j = 0; j < values.size(); ++j)
                values.data()[j] = std::norm(total.data()[j]);

            if (det.noise_std > 0.0)
                for (double &v : values)
                    v += det.noise_std * gauss(rng);

            for (double &v : values)
                v = std::clamp(v, det.floor, det.ceiling);

            if (det.agc_enabled)
            {
                const double peak = *std::max_element(values.begin(), values.end());
                if (peak > det.floor)
                {
                    const double scale = (det.ceiling - det.floor) / (peak - det.floor);
                    for (double &v : values)
                        v = det.floor + (v - det.floor) * scale;
                }
            }

            out.push_back(Hologram{std::move(values), geom, tag, same_spatial_frequency(group, geom)});
        }
        return out;
    }
}
