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

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

#include <holoris/errors.hpp>
#include <holoris/experiments.hpp>
#include <holoris/formats.hpp>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include <unistd.h>

using namespace holoris;
using Catch::Approx;
namespace fs = std::filesystem;

namespace
{
    struct TempDir
    {
        fs::path path;
        TempDir()
        {
            static int counter = 0;
            path = fs::temp_directory_path() / ("holoris_exp_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
            fs::remove_all(path);
            fs::create_directories(path);
        }
        ~TempDir() { fs::remove_all(path); }
    };

    TrialRecord record(double et, double ep)
    {
        TrialRecord r;
        r.estimate = AngularLocation{et, ep};
        r.err_theta_deg = et;
        r.err_phi_deg = ep;
        r.err_total_deg = std::hypot(et, ep);
        return r;
    }
}

// ================================================================================================
// Grid experiment
// ================================================================================================

TEST_CASE("Experiments - Reference grid has 104 distinct configurations")
{
    CHECK(reference_bs_locations().size() == 4);
    CHECK(reference_ue_locations().size() == 27);
    ExperimentConfig cfg;
    const auto res = run_localization_grid(cfg);
    CHECK(res.records.size() == 104);
    CHECK(res.stats.samples + res.stats.failures == 104);
    for (const auto &r : res.records)
        CHECK_FALSE(r.bs == r.ue);
}

TEST_CASE("Experiments - Noiseless grid records match the brute-force localizer")
{
    const oracle::Panel p;
    ExperimentConfig cfg;
    const auto res = run_localization_grid(cfg);
    for (const auto &r : res.records)
    {
        const auto holo = oracle::two_wave_hologram(p, r.bs.theta_deg, r.bs.phi_deg, r.ue.theta_deg, r.ue.phi_deg);
        const auto c = oracle::brute_force_localize(p, holo, r.bs.theta_deg, r.bs.phi_deg);
        double best = 1e9, bt = 0, bp = 0;
        for (int s = 0; s < 2; ++s)
            if (c.ok[s])
            {
                const double e = std::hypot(c.theta[s] - r.ue.theta_deg, c.phi[s] - r.ue.phi_deg);
                if (e < best)
                    best = e, bt = c.theta[s], bp = c.phi[s];
            }
        REQUIRE(r.estimate);
        CHECK(r.estimate->theta_deg == Approx(bt).margin(1e-9));
        CHECK(r.estimate->phi_deg == Approx(bp).margin(1e-9));
        CHECK(r.err_total_deg == Approx(best).margin(1e-9));
    }
}

TEST_CASE("Experiments - Single configuration from broadside base station")
{
    ExperimentConfig cfg;
    cfg.bs_locations = {{0.0, 0.0}};
    cfg.ue_locations = {{0.0, 30.0}};
    const auto res = run_localization_grid(cfg);
    REQUIRE(res.records.size() == 1);
    REQUIRE(res.records[0].estimate);
    // Fringe at bin round(32 * 0.2335 * sin 30) = 4: sin phi = 4 / (32 * 0.2335).
    const double expected = oracle::deg(std::asin(4.0 / (32.0 * 0.02 / oracle::Panel{}.lambda())));
    CHECK(res.records[0].estimate->phi_deg == Approx(expected).margin(1e-9));
    CHECK(res.records[0].err_total_deg == Approx(expected - 30.0).margin(1e-9));
    CHECK(res.records[0].err_total_deg == Approx(2.36).margin(0.01));
}

TEST_CASE("Experiments - Grid rejects an invalid configuration")
{
    ExperimentConfig cfg;
    cfg.trials = 0;
    CHECK_THROWS_AS(run_localization_grid(cfg), InvalidArgument);
    cfg.trials = 1;
    cfg.ue_locations = {{0.0, 95.0}};
    CHECK_THROWS_AS(run_localization_grid(cfg), InvalidArgument);
    cfg.ue_locations = {{0.0, 30.0}};
    cfg.detector.noise_std = -1.0;
    CHECK_THROWS_AS(run_localization_grid(cfg), InvalidArgument);
}

TEST_CASE("Experiments - Noisy grid is a pure function of the seed")
{
    ExperimentConfig cfg;
    cfg.bs_locations = {{0.0, 0.0}, {0.0, -30.0}};
    cfg.ue_locations = {{0.0, 15.0}, {15.0, 45.0}};
    cfg.trials = 3;
    cfg.seed = 77;
    cfg.detector.noise_std = 50.0;
    cfg.detector.phase_jitter_std = 0.2;
    const auto a = run_localization_grid(cfg);
    const auto b = run_localization_grid(cfg);
    std::ostringstream sa, sb;
    write_grid_records_csv(sa, a.records);
    write_grid_records_csv(sb, b.records);
    CHECK(sa.str() == sb.str());
    cfg.seed = 78;
    std::ostringstream sc;
    write_grid_records_csv(sc, run_localization_grid(cfg).records);
    CHECK(sc.str() != sa.str());
}

TEST_CASE("Experiments - Trial seeds separate every coordinate")
{
    CHECK(trial_seed(1, 2, 3, 4) == trial_seed(1, 2, 3, 4));
    CHECK(trial_seed(1, 2, 3, 4) != trial_seed(2, 2, 3, 4));
    CHECK(trial_seed(1, 2, 3, 4) != trial_seed(1, 3, 2, 4));
    CHECK(trial_seed(1, 2, 3, 4) != trial_seed(1, 2, 3, 5));
}

// ================================================================================================
// Error statistics
// ================================================================================================

TEST_CASE("Experiments - Error statistics use the N-1 estimator on zero-mean errors")
{
    std::vector<TrialRecord> recs{record(1.0, 2.0), record(-2.0, 0.5), record(3.0, -4.0), record(0.0, 10.0)};
    TrialRecord failed;
    failed.status = "no peak";
    recs.push_back(failed);
    const auto st = error_statistics(recs);
    CHECK(st.samples == 4);
    CHECK(st.failures == 1);
    CHECK(st.std_theta_deg == Approx(std::sqrt((1.0 + 4.0 + 9.0 + 0.0) / 3.0)));
    CHECK(st.std_phi_deg == Approx(std::sqrt((4.0 + 0.25 + 16.0 + 100.0) / 3.0)));
    CHECK(st.total_deviation_deg == Approx(std::hypot(st.std_theta_deg, st.std_phi_deg)));
    CHECK(st.max_error_deg == Approx(10.0));
    // within 9 deg: 3 of 5 trials, the failure counting as outside
    CHECK(st.fraction_within_9deg == Approx(0.6));
}

TEST_CASE("Experiments - Error CDF is non-decreasing and ends at one")
{
    std::vector<TrialRecord> recs{record(1.0, 0.0), record(1.0, 0.0), record(0.0, 3.0), record(2.0, 2.0)};
    const auto st = error_statistics(recs);
    REQUIRE(st.cdf.size() == 3);
    CHECK(st.cdf.front() == std::pair<double, double>{1.0, 0.5});
    for (std::size_t i = 1; i < st.cdf.size(); ++i)
    {
        CHECK(st.cdf[i].first > st.cdf[i - 1].first);
        CHECK(st.cdf[i].second >= st.cdf[i - 1].second);
    }
    CHECK(st.cdf.back().second == 1.0);
}

TEST_CASE("Experiments - Empty record set yields zeroed statistics")
{
    const auto st = error_statistics(std::vector<TrialRecord>{});
    CHECK(st.samples == 0);
    CHECK(st.fraction_within_9deg == 0.0);
    CHECK(st.cdf.empty());
}

// ================================================================================================
// Gain sweep
// ================================================================================================

TEST_CASE("Experiments - Gain sweep from a broadside base station")
{
    ExperimentConfig cfg;
    const std::vector<double> phis{-60, -45, -30, -15, 0, 15, 30, 45, 60};
    const auto pts = gain_sweep(cfg, phis);
    REQUIRE(pts.size() == phis.size());
    for (const auto &p : pts)
    {
        if (p.phi_deg == 0.0)
        {
            // UE coincides with the BS: no cross term, the point is flagged
            CHECK(p.status != "ok");
            CHECK_FALSE(p.estimate);
            continue;
        }
        CHECK(p.status == "ok");
        CHECK(p.gain_db >= 15.0);
        if (std::abs(p.phi_deg) <= 45.0)
            CHECK(p.gain_truth_db - p.gain_db <= 3.0);
        else
        {
            // steering the 1-bit beam by a 2.4 deg bin-snapping error at the edge of the scan
            CHECK(p.gain_truth_db - p.gain_db > 3.0);
            CHECK(p.gain_truth_db - p.gain_db < 4.0);
        }
    }
}

TEST_CASE("Experiments - Insertion loss is subtracted from the gain")
{
    ExperimentConfig cfg;
    const std::vector<double> phis{30.0};
    const auto base = gain_sweep(cfg, phis);
    cfg.insertion_loss_db = 2.5;
    const auto lossy = gain_sweep(cfg, phis);
    CHECK(lossy[0].gain_db == Approx(base[0].gain_db - 2.5));
    CHECK(lossy[0].gain_truth_db == Approx(base[0].gain_truth_db - 2.5));
}

// ================================================================================================
// BER
// ================================================================================================

TEST_CASE("Experiments - QAM bit error rate matches decision-region enumeration")
{
    for (unsigned M : {4u, 16u, 64u})
        for (double snr = -5.0; snr <= 30.0; snr += 2.5)
            CHECK(qam_bit_error_rate(snr, M) == Approx(oracle::qam_ber_enumerated(snr, M)).margin(1e-12).epsilon(1e-9));
}

TEST_CASE("Experiments - QAM bit error rate shape")
{
    // QPSK per-bit error is Q(sqrt(Es/N0))
    CHECK(qam_bit_error_rate(10.0, 4) == Approx(0.5 * std::erfc(std::sqrt(10.0) / std::sqrt(2.0))));
    CHECK(qam_bit_error_rate(-60.0, 64) == Approx(0.5).margin(1e-3));
    for (unsigned M : {4u, 16u, 64u})
        for (double snr = 0.0; snr < 30.0; snr += 1.0)
            CHECK(qam_bit_error_rate(snr + 1.0, M) < qam_bit_error_rate(snr, M));
    CHECK(qam_bit_error_rate(20.0, 64) > 1e-3);
    CHECK(qam_bit_error_rate(20.0, 64) < 1e-2);
    CHECK_THROWS_AS(qam_bit_error_rate(10.0, 8), InvalidArgument);
}

TEST_CASE("Experiments - BER curve is the baseline shifted by the gain")
{
    const std::vector<double> snr{0, 3, 6, 9, 12};
    const auto curve = ber_curve(snr, 6.0, 16);
    REQUIRE(curve.size() == snr.size());
    for (std::size_t i = 0; i < snr.size(); ++i)
    {
        CHECK(curve[i].tx_power_proxy_db == snr[i]);
        CHECK(curve[i].ber == qam_bit_error_rate(snr[i] + 6.0, 16));
    }
    CHECK(curve[2].ber == ber_curve(std::vector<double>{12.0}, 0.0, 16)[0].ber);
}

// ================================================================================================
// Showcase
// ================================================================================================

TEST_CASE("Experiments - Showcase emits every artifact per sample")
{
    TempDir tmp;
    ExperimentConfig cfg;
    cfg.output_dir = tmp.path;
    const auto samples = default_showcase_samples();
    const auto out = showcase_three_samples(cfg, samples);
    REQUIRE(out.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
    {
        CHECK(out[i].status == "ok");
        REQUIRE(out[i].estimate);
        CHECK(out[i].error_deg <= 4.98);
        CHECK(out[i].gain_db > 10.0);
        CHECK(out[i].files.size() == 5);
        for (const auto &f : out[i].files)
            CHECK(fs::exists(f));
        const auto coding = io::load_coding(tmp.path / ("sample_" + std::to_string(i + 1)) / "coding.txt");
        CHECK(coding.states.rows() == 32);
        const auto holo = io::load_hologram_csv(tmp.path / ("sample_" + std::to_string(i + 1)) / "hologram.csv");
        CHECK(holo.values.cols() == 32);
    }
    const std::vector<ShowcaseSample> two(samples.begin(), samples.begin() + 2);
    CHECK_THROWS_AS(showcase_three_samples(cfg, two), InvalidArgument);
}

TEST_CASE("Experiments - Noiseless showcase does not depend on the seed")
{
    TempDir a, b;
    ExperimentConfig cfg;
    cfg.output_dir = a.path;
    cfg.seed = 1;
    const auto first = showcase_three_samples(cfg, default_showcase_samples());
    cfg.output_dir = b.path;
    cfg.seed = 99;
    const auto second = showcase_three_samples(cfg, default_showcase_samples());
    for (std::size_t i = 0; i < 3; ++i)
    {
        CHECK(first[i].error_deg == second[i].error_deg);
        CHECK(io::read_file(first[i].files[3]) == io::read_file(second[i].files[3]));
    }
}

// ================================================================================================
// Manifest
// ================================================================================================

TEST_CASE("Experiments - SHA-256 of known vectors")
{
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("Experiments - Manifest lists artifacts relative to the run root")
{
    TempDir tmp;
    fs::create_directories(tmp.path / "grid");
    io::write_file(tmp.path / "grid" / "records.csv", "abc");
    RunManifest m("grid", 42, "{\"trials\":1}");
    m.add_artifact(tmp.path / "grid" / "records.csv", tmp.path);
    const std::string text = m.render();
    CHECK(text == "# holoris-manifest v1\nsuite=grid\nseed=42\nstatus=OK\nconfig={\"trials\":1}\n"
                  "artifact=grid/records.csv sha256=ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad\n");
    m.mark_failed("boom");
    CHECK(m.failed());
    CHECK(m.render().find("status=FAILED\nfailure=boom\n") != std::string::npos);
    CHECK_THROWS_AS(m.add_artifact(tmp.path / "missing.csv"), IoError);
}

TEST_CASE("Experiments - Result tables parse back with their headers")
{
    ExperimentConfig cfg;
    cfg.bs_locations = {{0.0, 0.0}};
    cfg.ue_locations = {{0.0, 30.0}, {15.0, -15.0}};
    const auto res = run_localization_grid(cfg);
    std::stringstream rs, ss;
    write_grid_records_csv(rs, res.records);
    write_statistics_csv(ss, res.stats);
    const auto records = io::read_csv_table(rs);
    CHECK(records.rows.size() == 2);
    CHECK(records.number(0, records.column("err_total_deg")) == Approx(res.records[0].err_total_deg));
    const auto stats = io::read_csv_table(ss);
    CHECK(stats.number(0, stats.column("samples")) == 2.0);
}
