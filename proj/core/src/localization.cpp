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

#include <holoris/localization.hpp>
#include <holoris/errors.hpp>

#include <algorithm>
#include <string>
#include <cmath>
#include <limits>
#include <vector>

namespace holoris
{
    namespace
    {
        // Circular distance of bin index k from 0 on an axis of length len.
        std::size_t torus_distance(std::size_t k, std::size_t len) noexcept
        {
            return std::min(k, len - k);
        }

        bool excluded(std::size_t k, std::size_t l, std::size_t rows, std::size_t cols, std::size_t guard) noexcept
        {
            return torus_distance(k, rows) <= guard && torus_distance(l, cols) <= guard;
        }

        // The padded transform of the hologram mean is a sinc that swamps the bins next to DC, so a
        // padded spectrum is taken of the mean-removed hologram with the DC bin restored afterwards.
        // Without padding the mean only reaches the DC bin and the plain transform is used.
        Spectrum localization_spectrum(const RealGrid &values, std::size_t pad)
        {
            if (pad <= 1)
                return fft2(values, pad);
            double sum = 0.0;
            for (double v : values)
                sum += v;
            RealGrid centered = values;
            const double mean = sum / double(values.size());
            for (double &v : centered)
                v -= mean;
            auto spec = fft2(centered, pad);
            spec.values(0, 0) = sum;
            return spec;
        }

        std::string describe(AngularLocation a)
        {
            return "(" + std::to_string(a.theta_deg) + ", " + std::to_string(a.phi_deg) + ")";
        }
    }

    PeakSearchResult find_peak(const Spectrum &spec, const PeakSearchOptions &opts)
    {
        const auto &v = spec.values;
        const std::size_t rows = v.rows(), cols = v.cols();
        if (rows < 2 || cols < 2)
            throw InvalidArgument("find_peak: spectrum must be at least 2 x 2");
        if (2 * opts.dc_guard + 1 >= std::min(rows, cols))
            throw InvalidArgument("find_peak: dc_guard leaves no searchable bins");

        // Relative tolerance under which two magnitudes count as a tie; conjugate bins of a real
        // hologram agree only to rounding.
        constexpr double tie_tol = 1e-12;

        double best = -1.0;
        std::size_t best_k = 0, best_l = 0;
        for (std::size_t k = 0; k <= rows / 2; ++k)
            for (std::size_t l = 0; l < cols; ++l)
            {
                if (excluded(k, l, rows, cols, opts.dc_guard))
                    continue;
                const double mag = std::abs(v(k, l));
                if (mag > best * (1.0 + tie_tol) + std::numeric_limits<double>::denorm_min())
                {
                    best = mag;
                    best_k = k;
                    best_l = l;
                }
            }

        std::vector<double> mags;
        mags.reserve(v.size());
        for (std::size_t k = 0; k < rows; ++k)
            for (std::size_t l = 0; l < cols; ++l)
                if (!excluded(k, l, rows, cols, opts.dc_guard))
                    mags.push_back(std::abs(v(k, l)));
        const auto mid = mags.begin() + std::ptrdiff_t(mags.size() / 2);
        std::nth_element(mags.begin(), mid, mags.end());
        const double median = *mid;

        const double dc = std::abs(v(0, 0));
        if (!(best > 1e-9 * dc) || best <= 0.0)
            throw NoPeak("find_peak: no off-DC energy in the hologram spectrum");

        const double ratio = median > 0.0 ? best / median : std::numeric_limits<double>::infinity();
        if (ratio < opts.significance)
            throw NoPeak("find_peak: strongest off-DC bin is only " + std::to_string(ratio) +
                         " x the median magnitude");

        return {{best_k + 1, best_l + 1}, best, ratio};
    }

    SpectralPeaks spectral_peaks(const Spectrum &spec, const PeakSearchOptions &opts)
    {
        const auto peak = find_peak(spec, opts);
        const auto f = bin_frequencies(peak.bin, spec.values.rows(), spec.values.cols());
        return {spec.values(0, 0), spec.values(peak.bin.i_z - 1, peak.bin.i_x - 1),
                {regulate(f.omega_z), regulate(f.omega_x)}};
    }

    double regulate(double x) noexcept
    {
        return x - two_pi * std::round(x / two_pi);
    }

    SpatialFrequencyPair bin_frequencies(PeakBin bin, std::size_t rows, std::size_t cols) noexcept
    {
        return {two_pi * double(bin.i_z - 1) / double(rows), two_pi * double(bin.i_x - 1) / double(cols)};
    }

    std::array<SpatialFrequencyPair, 2> twin_frequencies(SpatialFrequencyPair bs, SpatialFrequencyPair peak) noexcept
    {
        return {SpatialFrequencyPair{regulate(bs.omega_z + peak.omega_z), regulate(bs.omega_x + peak.omega_x)},
                SpatialFrequencyPair{regulate(bs.omega_z - peak.omega_z), regulate(bs.omega_x - peak.omega_x)}};
    }

    LocalizationResult localize(const Hologram &holo, AngularLocation bs, const LocalizeOptions &opts,
                                const DisambiguationPolicy &policy)
    {
        if (holo.degenerate)
            throw NoPeak("localize: degenerate interference (sources share one spatial frequency)");
        const auto &geom = holo.geometry;
        if (holo.values.rows() != geom.n_z() || holo.values.cols() != geom.n_x())
            throw InvalidArgument("localize: hologram dimensions do not match its geometry");

        const auto bs_freq = spatial_frequencies(bs, geom);
        const auto spec = localization_spectrum(holo.values, opts.zero_pad_factor);
        const auto peak = find_peak(spec, opts.peak);

        LocalizationResult result;
        result.peak_bin = peak.bin;
        result.peak_to_median_ratio = peak.peak_to_median_ratio;
        result.peak_frequencies = bin_frequencies(peak.bin, spec.values.rows(), spec.values.cols());

        const auto twins = twin_frequencies(bs_freq, result.peak_frequencies);
        std::array<std::optional<AngularLocation>, 2> cands;
        for (std::size_t i = 0; i < 2; ++i)
            if (is_propagating(twins[i], geom))
                cands[i] = angles_from_frequencies(twins[i], geom);
        if (!cands[0] && !cands[1])
            throw AllCandidatesInfeasible("localize: both twin candidates are evanescent");
        result.candidate_1 = cands[0];
        result.candidate_2 = cands[1];

        return disambiguate(std::move(result), policy);
    }

    LocalizationResult disambiguate(LocalizationResult result, const DisambiguationPolicy &policy)
    {
        std::vector<AngularLocation> present;
        for (const auto &c : {result.candidate_1, result.candidate_2})
            if (c)
                present.push_back(*c);

        if (std::holds_alternative<NoDisambiguation>(policy))
        {
            result.chosen.reset();
        }
        else if (const auto *oracle = std::get_if<OracleDisambiguation>(&policy))
        {
            if (present.empty())
                throw AllCandidatesInfeasible("disambiguate: no candidates to choose from");
            result.chosen = *std::min_element(present.begin(), present.end(), [&](const auto &a, const auto &b) {
                return angular_error_deg(a, oracle->truth) < angular_error_deg(b, oracle->truth);
            });
        }
        else
        {
            const auto &sector = std::get<SectorDisambiguation>(policy);
            std::vector<AngularLocation> inside;
            std::copy_if(present.begin(), present.end(), std::back_inserter(inside),
                         [&](const auto &c) { return sector.contains(c); });
            if (inside.empty())
                throw SectorEmpty("disambiguate: no candidate inside the admissible sector");
            if (inside.size() > 1)
                throw SectorAmbiguous("disambiguate: both candidates " + describe(inside[0]) + " and " +
                                      describe(inside[1]) + " lie inside the admissible sector");
            result.chosen = inside.front();
        }
        return result;
    }

    std::map<std::uint32_t, TagOutcome> multiuser_localize(std::span<const Hologram> holos, AngularLocation bs,
                                                           const LocalizeOptions &opts,
                                                           const DisambiguationPolicy &policy)
    {
        std::map<std::uint32_t, TagOutcome> out;
        for (const auto &h : holos)
            if (!out.try_emplace(h.frequency_tag).second)
                throw InvalidArgument("multiuser_localize: duplicate frequency tag " + std::to_string(h.frequency_tag));
        for (const auto &h : holos)
        {
            TagOutcome outcome;
            try
            {
                outcome.result = localize(h, bs, opts, policy);
            }
            catch (const Error &e)
            {
                outcome.error = e.what();
            }
            out[h.frequency_tag] = std::move(outcome);
        }
        return out;
    }
}
