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

#pragma once

#include <holoris/geometry.hpp>
#include <holoris/grid.hpp>

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace holoris
{
    struct FarField
    {
        AngularLocation direction;
    };

    // Point source at a 3D position in meters; must lie in front of the panel (y > 0).
    struct NearField
    {
        Vec3 position;
    };

    // Coherent illuminator (base station or user). Sources sharing a frequency tag interfere;
    // distinct tags are recorded as separate holograms.
    struct Source
    {
        std::variant<FarField, NearField> kind = FarField{};
        double amplitude = 1.0;
        double phase_rad = 0.0;
        std::uint32_t frequency_tag = 0;

        static Source far(AngularLocation dir, double amplitude = 1.0, double phase_rad = 0.0, std::uint32_t tag = 0);
        static Source near(Vec3 position, double amplitude = 1.0, double phase_rad = 0.0, std::uint32_t tag = 0);

        bool is_far_field() const noexcept { return std::holds_alternative<FarField>(kind); }

        // Throws InvalidArgument on negative amplitude, non-front-facing position or angles.
        void validate() const;
    };

    // Square-law detector imperfections, applied in this order: additive Gaussian noise on intensity,
    // clipping to [floor, ceiling], then optional AGC (affine rescale mapping the maximum to ceiling).
    struct DetectorModel
    {
        double noise_std = 0.0;
        double floor = 0.0;
        double ceiling = 1.0e12;
        bool agc_enabled = false;
        double phase_jitter_std = 0.0; // radians, applied to one source per tag and call

        void validate() const;
    };

    struct Hologram
    {
        RealGrid values; // n_z x n_x, non-negative
        ArrayGeometry geometry;
        std::uint32_t frequency_tag = 0;
        bool degenerate = false; // all interfering sources share one spatial frequency
    };

    ComplexGrid complex_field_at_array(const Source &src, const ArrayGeometry &geom);

    // One hologram per distinct frequency tag, ordered by tag. All randomness derives from `seed`.
    std::vector<Hologram> synthesize_hologram(std::span<const Source> sources, const ArrayGeometry &geom,
                                              const DetectorModel &det, std::uint64_t seed);
}
