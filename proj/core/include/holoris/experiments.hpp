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

#include <holoris/beamforming.hpp>
#include <holoris/geometry.hpp>
#include <holoris/localization.hpp>
#include <holoris/wavefield.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace holoris
{
    // The four base-station placements of the reference measurement campaign.
    std::vector<AngularLocation> reference_bs_locations();

    // theta in {0, +/-15} x phi in {0, +/-15, +/-30, +/-45, +/-60} degrees.
    std::vector<AngularLocation> reference_ue_locations();

    enum class CodingMode
    {
        far_field,
        near_field
    };

    struct ExperimentConfig
    {
        ArrayGeometry geometry = ArrayGeometry::reference_panel();
        DetectorModel detector;
        std::vector<AngularLocation> bs_locations = reference_bs_locations();
        std::vector<AngularLocation> ue_locations = reference_ue_locations();
        std::size_t trials = 1;
        std::uint64_t seed = 0;
        LocalizeOptions localize;
        DisambiguationPolicy disambiguation = NoDisambiguation{}; // used by the autonomous pipelines
        CodingMode coding_mode = CodingMode::far_field;
        double bs_range_m = 10.0;       // near-field coding and showcase only
        double ue_range_m = 10.0;       // near-field coding and showcase only
        double insertion_loss_db = 0.0; // subtracted from every reported gain
        std::filesystem::path output_dir = "results";

        // Throws InvalidArgument on trials == 0, invalid detector or non-front-facing locations.
        void validate() const;
    };

    // Per-trial seed, a pure function of the run seed and the trial coordinates.
    std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept;

    struct TrialRecord
    {
        AngularLocation bs;
        AngularLocation ue;
        std::size_t trial = 0;
        std::optional<AngularLocation> estimate;
        std::string status = "ok"; // otherwise the failure message
        double err_theta_deg = 0.0;
        double err_phi_deg = 0.0;
        double err_total_deg = 0.0;
    };

    struct ErrorStatistics
    {
        std::size_t samples = 0;  // successful trials
        std::size_t failures = 0; // trials that produced no estimate
        double std_theta_deg = 0.0;
        double std_phi_deg = 0.0;
        double total_deviation_deg = 0.0; // sqrt(std_theta^2 + std_phi^2)
        double max_error_deg = 0.0;
        double fraction_within_9deg = 0.0; // over all trials; failures count as outside
        std::vector<std::pair<double, double>> cdf; // (total error, fraction of samples <= error)
    };

    // STD per axis is sqrt(sum (est - truth)^2 / (N - 1)) over successful trials.
    ErrorStatistics error_statistics(std::span<const TrialRecord> records);

    struct GridResult
    {
        std::vector<TrialRecord> records;
        ErrorStatistics stats;
    };

    // Every BS x UE pair (coincident pairs skipped) x trial: synthesize, localize, pick the twin
    // candidate closest to the truth, record the wrapped errors.
    GridResult run_localization_grid(const ExperimentConfig &cfg);

    struct GainPoint
    {
        double phi_deg = 0.0;
        std::optional<AngularLocation> estimate;
        double gain_db = 0.0;       // coding from the estimate vs all-zero
        double gain_truth_db = 0.0; // coding from the true location vs all-zero
        std::string status = "ok";
    };

    // For each azimuth: fresh hologram -> localize -> code from the estimate -> link gain.
    // The BS is cfg.bs_locations.front(); UE elevation is theta_deg. Failed points are flagged and skipped.
    // An oracle policy is re-targeted at each point's true location.
    std::vector<GainPoint> gain_sweep(const ExperimentConfig &cfg, std::span<const double> phi_deg, double theta_deg = 0.0);

    // Uncoded Gray-mapped square M-QAM bit error probability in AWGN at the given Es/N0.
    double qam_bit_error_rate(double snr_db, unsigned modulation_order);

    struct BerPoint
    {
        double tx_power_proxy_db = 0.0;
        double ber = 0.0;
    };

    // BER at snr + gain for every grid point; modulation_order in {4, 16, 64}.
    std::vector<BerPoint> ber_curve(std::span<const double> snr_db, double gain_db, unsigned modulation_order);

    struct ShowcaseSample
    {
        AngularLocation bs;
        AngularLocation ue;
    };

    std::vector<ShowcaseSample> default_showcase_samples();

    struct ShowcaseSummary
    {
        ShowcaseSample sample;
        std::optional<AngularLocation> estimate;
        double error_deg = 0.0;
        double gain_db = 0.0;
        std::string status = "ok";
        std::vector<std::filesystem::path> files;
    };

    // Emits hologram, spectrum, localization report, coding and pattern per sample under
    // cfg.output_dir / "sample_<i>". Sources sit at cfg.bs_range_m / cfg.ue_range_m.
    std::vector<ShowcaseSummary> showcase_three_samples(const ExperimentConfig &cfg,
                                                        std::span<const ShowcaseSample> samples,
                                                        double pattern_step_deg = 2.0);

    // CSV writers for the result tables.
    void write_grid_records_csv(std::ostream &os, std::span<const TrialRecord> records);
    void write_statistics_csv(std::ostream &os, const ErrorStatistics &stats);
    void write_cdf_csv(std::ostream &os, const ErrorStatistics &stats);
    void write_gain_csv(std::ostream &os, std::span<const GainPoint> points);
    void write_ber_csv(std::ostream &os, std::span<const BerPoint> baseline, std::span<const BerPoint> enhanced);

    // Hex SHA-256 of a byte string.
    std::string sha256_hex(std::string_view bytes);

    // Run manifest: config text, seed, status and a checksum for every artifact.
    class RunManifest
    {
    public:
        RunManifest(std::string suite, std::uint64_t seed, std::string config_text);

        // Checksums the file as written; it is listed relative to root, or by file name when root is empty.
        void add_artifact(const std::filesystem::path &path, const std::filesystem::path &root = {});
        void mark_failed(std::string reason);
        bool failed() const noexcept { return failed_; }

        std::string render() const;
        void write(const std::filesystem::path &path) const;

    private:
        std::string suite_;
        std::uint64_t seed_;
        std::string config_text_;
        bool failed_ = false;
        std::string reason_;
        std::vector<std::pair<std::string, std::string>> artifacts_;
    };
}
