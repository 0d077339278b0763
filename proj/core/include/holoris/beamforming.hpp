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
#include <holoris/wavefield.hpp>

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace holoris
{
    // Desired continuous reflection phase per element, radians; defined up to a global constant.
    struct PhaseProfile
    {
        RealGrid values;
    };

    // 1-bit reflection states: 0 -> phase 0, 1 -> phase pi.
    struct CodingMatrix
    {
        Grid<std::uint8_t> states;

        static CodingMatrix all_zero(const ArrayGeometry &geom)
        {
            return {Grid<std::uint8_t>(geom.n_z(), geom.n_x(), 0)};
        }
        bool operator==(const CodingMatrix &) const = default;
    };

    // Anomalous-reflection gradient: phase(m, n) = -k0 (u_bs + u_ue) . p_mn.
    PhaseProfile farfield_phase_profile(AngularLocation bs, AngularLocation ue, const ArrayGeometry &geom);

    // Conjugate of the round-trip propagation phase BS -> element -> UE, i.e. the reflection phase that
    // makes every path arrive in phase at ue_pos: phase(m, n) = k0 (|bs_pos - p_mn| + |ue_pos - p_mn|).
    PhaseProfile nearfield_phase_profile(Vec3 bs_pos, Vec3 ue_pos, const ArrayGeometry &geom);

    // Nearest of {0, pi} by wrapped distance; exact ties at +/- pi/2 go to state 0.
    CodingMatrix quantize_1bit(const PhaseProfile &profile);

    // Receiver for received_power: a far-field direction or a point (meters, y > 0).
    using ReceiverLocation = std::variant<AngularLocation, Vec3>;

    // |sum_mn incident_mn * reflection_mn * propagation_mn|^2, relative to a single unit element.
    // The propagation factor is a plane-wave phase for a direction and a normalized spherical wave for a point.
    double received_power(const CodingMatrix &coding, const Source &bs, const ReceiverLocation &ue,
                          const ArrayGeometry &geom);

    // Same with an ideal continuous-phase reflection profile.
    double received_power(const PhaseProfile &profile, const Source &bs, const ReceiverLocation &ue,
                          const ArrayGeometry &geom);

    struct AngleGrid
    {
        std::vector<double> theta_deg;
        std::vector<double> phi_deg;

        // Inclusive uniform grid.
        static AngleGrid uniform(double theta_min, double theta_max, double phi_min, double phi_max, double step);
    };

    struct RadiationPattern
    {
        AngleGrid grid;
        RealGrid power;         // rows theta, columns phi, linear
        AngularLocation peak;
        double peak_power = 0.0;
        double hpbw_theta_deg = 0.0; // half-power width of the theta cut through the peak, 0 if unresolved
        double hpbw_phi_deg = 0.0;

        double power_db(std::size_t i, std::size_t j) const;
    };

    RadiationPattern pattern(const CodingMatrix &coding, const Source &bs, const ArrayGeometry &geom,
                             const AngleGrid &grid);

    struct LinkGain
    {
        double gain_db = 0.0;
        bool baseline_floored = false; // baseline power underflowed and was replaced by a floor value
    };

    // 10 log10(P(coding) / P(baseline)) at the receiver.
    LinkGain link_gain(const CodingMatrix &coding, const CodingMatrix &baseline, const Source &bs,
                       const ReceiverLocation &ue, const ArrayGeometry &geom);
}
