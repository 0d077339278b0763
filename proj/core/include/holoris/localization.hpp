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

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>

namespace holoris
{
    // Unnormalized forward 2D DFT of a hologram, optionally zero-padded to
    // (zero_pad_factor * n_z) x (zero_pad_factor * n_x) points.
    struct Spectrum
    {
        ComplexGrid values;
        std::size_t zero_pad_factor = 1;
    };

    Spectrum fft2(const RealGrid &intensity, std::size_t zero_pad_factor = 1);
    inline Spectrum fft2(const Hologram &holo, std::size_t zero_pad_factor = 1)
    {
        return fft2(holo.values, zero_pad_factor);
    }

    // 1-based spectral bin, i.e. bin (k, l) is reported as (k + 1, l + 1).
    struct PeakBin
    {
        std::size_t i_z = 1;
        std::size_t i_x = 1;
        bool operator==(const PeakBin &) const = default;
    };

    struct PeakSearchOptions
    {
        std::size_t dc_guard = 0;  // excludes a (2g+1) x (2g+1) torus neighborhood of DC
        double significance = 3.0; // minimum peak / median off-DC magnitude
    };

    struct PeakSearchResult
    {
        PeakBin bin;
        double magnitude = 0.0;
        double peak_to_median_ratio = 0.0;
    };

    // Largest |value| outside the DC exclusion, searched over the half-spectrum k <= rows/2 with
    // lexicographically smallest (k, l) winning ties. Throws NoPeak when nothing significant is found.
    PeakSearchResult find_peak(const Spectrum &spec, const PeakSearchOptions &opts = {});

    // The three-peak structure around the located cross term.
    struct SpectralPeaks
    {
        std::complex<double> dc_amplitude;
        std::complex<double> pair_amplitude;
        SpatialFrequencyPair pair_location; // differential frequencies, regulated
    };

    SpectralPeaks spectral_peaks(const Spectrum &spec, const PeakSearchOptions &opts = {});

    // x - 2 pi round(x / 2 pi), rounding half away from zero. Result lies in [-pi, pi].
    double regulate(double x) noexcept;

    // Frequency of a 1-based bin in a spectrum of the given size: 2 pi (i - 1) / size per axis.
    SpatialFrequencyPair bin_frequencies(PeakBin bin, std::size_t rows, std::size_t cols) noexcept;

    // regulate(bs +/- peak) on each axis; the two twin-image frequency candidates.
    std::array<SpatialFrequencyPair, 2> twin_frequencies(SpatialFrequencyPair bs, SpatialFrequencyPair peak) noexcept;

    struct NoDisambiguation
    {
    };

    // Evaluation only: pick the candidate closest to the known truth.
    struct OracleDisambiguation
    {
        AngularLocation truth;
    };

    // Admissible sector, bounds inclusive, degrees.
    struct SectorDisambiguation
    {
        double theta_min = -90.0;
        double theta_max = 90.0;
        double phi_min = -90.0;
        double phi_max = 90.0;

        bool contains(AngularLocation loc) const noexcept
        {
            return loc.theta_deg >= theta_min && loc.theta_deg <= theta_max &&
                   loc.phi_deg >= phi_min && loc.phi_deg <= phi_max;
        }
    };

    using DisambiguationPolicy = std::variant<NoDisambiguation, OracleDisambiguation, SectorDisambiguation>;

    struct LocalizeOptions
    {
        std::size_t zero_pad_factor = 1; // above 1 the mean-removed hologram is transformed
        PeakSearchOptions peak;
    };

    struct LocalizationResult
    {
        std::optional<AngularLocation> candidate_1; // regulate(bs + peak), empty when evanescent
        std::optional<AngularLocation> candidate_2; // regulate(bs - peak), empty when evanescent
        std::optional<AngularLocation> chosen;
        PeakBin peak_bin;
        double peak_to_median_ratio = 0.0;
        SpatialFrequencyPair peak_frequencies;
    };

    // Holographic user localization against a known base-station direction.
    // Throws NoPeak (including degenerate holograms) and AllCandidatesInfeasible, plus the
    // disambiguation errors of the chosen policy.
    LocalizationResult localize(const Hologram &holo, AngularLocation bs, const LocalizeOptions &opts = {},
                                const DisambiguationPolicy &policy = NoDisambiguation{});

    // Fills `chosen`. Sector policy throws SectorEmpty / SectorAmbiguous.
    LocalizationResult disambiguate(LocalizationResult result, const DisambiguationPolicy &policy);

    // Maximum-likelihood refinement: exhaustive search on the grid coarse + k * grid_step (per axis,
    // |k * grid_step| <= search_halfwidth) minimizing the squared misfit between the hologram and the
    // two-plane-wave intensity model, with the model's DC level and complex cross-term amplitude fitted
    // by least squares at every grid point.
    AngularLocation ml_refine(const Hologram &holo, AngularLocation bs, AngularLocation coarse,
                              double search_halfwidth_deg, double grid_step_deg);

    struct TagOutcome
    {
        std::optional<LocalizationResult> result;
        std::string error; // empty on success
    };

    // Localizes every frequency-tagged hologram independently.
    std::map<std::uint32_t, TagOutcome> multiuser_localize(std::span<const Hologram> holos, AngularLocation bs,
                                                           const LocalizeOptions &opts = {},
                                                           const DisambiguationPolicy &policy = NoDisambiguation{});
}
