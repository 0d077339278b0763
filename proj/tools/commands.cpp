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

#include "commands.hpp"
#include "config.hpp"

#include <holoris/beamforming.hpp>
#include <holoris/errors.hpp>
#include <holoris/experiments.hpp>
#include <holoris/formats.hpp>
#include <holoris/localization.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace holoris::cli
{
    namespace fs = std::filesystem;

    namespace
    {
        const std::vector<std::string> suites{"grid", "gain", "ber", "showcase"};

        // "a,b" or "a:b" with two finite decimals.
        std::pair<double, double> parse_pair(const std::string &text, const std::string &option)
        {
            const auto sep = text.find_first_of(",:");
            if (sep == std::string::npos)
                throw InvalidArgument(option + ": expected two numbers separated by ',' or ':', got '" + text + "'");
            try
            {
                return {io::parse_double(text.substr(0, sep), 0), io::parse_double(text.substr(sep + 1), 0)};
            }
            catch (const FormatError &)
            {
                throw InvalidArgument(option + ": expected two numbers separated by ',' or ':', got '" + text + "'");
            }
        }

        AngularLocation parse_angles(const std::string &text, const std::string &option)
        {
            const auto [t, p] = parse_pair(text, option);
            const AngularLocation a{t, p};
            if (!in_front_half_space(a))
                throw InvalidArgument(option + ": angles must satisfy |theta|, |phi| < 90");
            return a;
        }

        std::string fmt(double v) { return io::format_double(v); }

        struct Globals
        {
            bool quiet = false;
            std::optional<std::uint64_t> seed;
        };

        class Runner
        {
        public:
            Runner(const Globals &g, std::ostream &out, std::ostream &err) : g_(g), out_(out), err_(err) {}

            void progress(const std::string &msg) const
            {
                if (!g_.quiet)
                    err_ << msg << '\n';
            }

            RunConfig config(const std::string &path) const
            {
                RunConfig cfg = path.empty() ? default_run_config() : load_run_config(path);
                if (g_.seed)
                    cfg.experiment.seed = *g_.seed;
                return cfg;
            }

            const Globals &g_;
            std::ostream &out_;
            std::ostream &err_;
        };

        // ---------------------------------------------------------------- simulate

        struct SimulateArgs
        {
            std::string config;
            std::string output = "hologram.csv";
        };

        void cmd_simulate(const Runner &run, const SimulateArgs &a)
        {
            const auto cfg = run.config(a.config);
            const auto sources = cfg.plain_sources();
            if (sources.empty())
                throw ConfigError("sources: at least one source is required");
            const auto holos = synthesize_hologram(sources, cfg.geometry, cfg.detector, cfg.experiment.seed);

            const fs::path out(a.output);
            for (const auto &h : holos)
            {
                fs::path target = out;
                if (holos.size() > 1)
                    target = out.parent_path() /
                             (out.stem().string() + "_tag" + std::to_string(h.frequency_tag) + out.extension().string());
                io::save_hologram_csv(target, h);
                run.out_ << target.string() << '\n';
                if (h.degenerate)
                    run.progress("simulate: tag " + std::to_string(h.frequency_tag) +
                                 " is degenerate (all sources share one spatial frequency)");
            }
            run.progress("simulate: wrote " + std::to_string(holos.size()) + " hologram(s)");
        }

        // ---------------------------------------------------------------- localize

        struct LocalizeArgs
        {
            std::string hologram;
            std::string bs;
            std::size_t zero_pad = 1;
            std::size_t dc_guard = 0;
            double significance = PeakSearchOptions{}.significance;
            std::string sector;
            std::string sector_theta;
            std::string oracle_truth;
            bool ml_refine = false;
            double ml_halfwidth = 5.0;
            double ml_step = 0.1;
        };

        void cmd_localize(const Runner &run, const LocalizeArgs &a)
        {
            const auto bs = parse_angles(a.bs, "--bs");
            if (a.zero_pad < 1)
                throw InvalidArgument("--zero-pad: must be >= 1");
            if (!(a.ml_step > 0.0) || !(a.ml_halfwidth >= 0.0))
                throw InvalidArgument("--ml-step/--ml-halfwidth: step must be > 0 and half-width >= 0");

            DisambiguationPolicy policy = NoDisambiguation{};
            if (!a.oracle_truth.empty())
                policy = OracleDisambiguation{parse_angles(a.oracle_truth, "--oracle-truth")};
            else if (!a.sector.empty() || !a.sector_theta.empty())
            {
                SectorDisambiguation s;
                if (!a.sector.empty())
                    std::tie(s.phi_min, s.phi_max) = parse_pair(a.sector, "--sector");
                if (!a.sector_theta.empty())
                    std::tie(s.theta_min, s.theta_max) = parse_pair(a.sector_theta, "--sector-theta");
                if (s.phi_min > s.phi_max || s.theta_min > s.theta_max)
                    throw InvalidArgument("--sector: lower bound exceeds upper bound");
                policy = s;
            }

            const auto holo = io::load_hologram_csv(a.hologram);
            LocalizeOptions opts;
            opts.zero_pad_factor = a.zero_pad;
            opts.peak.dc_guard = a.dc_guard;
            opts.peak.significance = a.significance;
            const auto res = localize(holo, bs, opts, policy);
            run.out_ << io::localization_report(res);

            if (a.ml_refine)
            {
                const auto start = res.chosen ? res.chosen : res.candidate_1 ? res.candidate_1 : res.candidate_2;
                const auto refined = ml_refine(holo, bs, *start, a.ml_halfwidth, a.ml_step);
                run.out_ << "refined_theta_deg=" << fmt(refined.theta_deg) << '\n'
                         << "refined_phi_deg=" << fmt(refined.phi_deg) << '\n';
            }
        }

        // ---------------------------------------------------------------- codegen

        struct CodegenArgs
        {
            std::string mode;
            std::string bs;
            std::string ue;
            std::optional<double> bs_range;
            std::optional<double> ue_range;
            std::string output;
            std::string config;
        };

        void cmd_codegen(const Runner &run, const CodegenArgs &a)
        {
            const auto bs = parse_angles(a.bs, "--bs");
            const auto ue = parse_angles(a.ue, "--ue");
            const auto cfg = run.config(a.config);
            const auto &geom = cfg.geometry;

            CodingMatrix coding;
            Source bs_src;
            ReceiverLocation rx;
            if (a.mode == "far")
            {
                coding = quantize_1bit(farfield_phase_profile(bs, ue, geom));
                bs_src = Source::far(bs);
                rx = ue;
            }
            else
            {
                if (!a.ue_range || !a.bs_range)
                    throw InvalidArgument("codegen: near mode requires --bs-range and --ue-range");
                if (!(*a.ue_range > 0.0) || !(*a.bs_range > 0.0))
                    throw InvalidArgument("codegen: ranges must be > 0");
                const Vec3 bs_pos = direction_vector(bs) * *a.bs_range;
                const Vec3 ue_pos = direction_vector(ue) * *a.ue_range;
                coding = quantize_1bit(nearfield_phase_profile(bs_pos, ue_pos, geom));
                bs_src = Source::near(bs_pos);
                rx = ue_pos;
            }
            io::save_coding(a.output, coding);

            const double power = received_power(coding, bs_src, rx, geom);
            const auto gain = link_gain(coding, CodingMatrix::all_zero(geom), bs_src, rx, geom);
            run.out_ << "target_power_db=" << fmt(10.0 * std::log10(std::max(power, 1e-300))) << '\n'
                     << "gain_vs_all_zero_db=" << fmt(gain.gain_db) << '\n';
            run.progress("codegen: wrote " + a.output);
        }

        // ---------------------------------------------------------------- pattern

        struct PatternArgs
        {
            std::string coding;
            std::string bs;
            double step = 1.0;
            std::string output;
            std::string config;
        };

        void cmd_pattern(const Runner &run, const PatternArgs &a)
        {
            const auto bs = parse_angles(a.bs, "--bs");
            if (!(a.step > 0.0))
                throw InvalidArgument("--step: must be > 0");
            const auto cfg = run.config(a.config);
            const auto coding = io::load_coding(a.coding);
            if (coding.states.rows() != cfg.geometry.n_z() || coding.states.cols() != cfg.geometry.n_x())
                throw InvalidArgument("pattern: coding size does not match the configured geometry");
            const auto pat = pattern(coding, Source::far(bs), cfg.geometry,
                                     AngleGrid::uniform(-80.0, 80.0, -80.0, 80.0, a.step));
            std::ostringstream os;
            io::write_pattern_csv(os, pat);
            io::write_file(a.output, os.str());
            run.out_ << "peak_theta_deg=" << fmt(pat.peak.theta_deg) << '\n'
                     << "peak_phi_deg=" << fmt(pat.peak.phi_deg) << '\n'
                     << "peak_power_db=" << fmt(10.0 * std::log10(std::max(pat.peak_power, 1e-300))) << '\n'
                     << "hpbw_theta_deg=" << fmt(pat.hpbw_theta_deg) << '\n'
                     << "hpbw_phi_deg=" << fmt(pat.hpbw_phi_deg) << '\n';
        }

        // ---------------------------------------------------------------- experiment

        struct ExperimentArgs
        {
            std::string suite;
            std::string config;
        };

        double mean_gain(std::span<const GainPoint> points, std::size_t &used)
        {
            double sum = 0.0;
            used = 0;
            for (const auto &p : points)
                if (p.status == "ok")
                {
                    sum += p.gain_db;
                    ++used;
                }
            return used ? sum / double(used) : std::nan("");
        }

        void cmd_experiment(const Runner &run, const ExperimentArgs &a)
        {
            if (std::find(suites.begin(), suites.end(), a.suite) == suites.end())
                throw InvalidArgument("experiment: unknown suite '" + a.suite + "'; valid suites: grid, gain, ber, showcase");
            auto cfg = run.config(a.config);
            const fs::path dir = cfg.experiment.output_dir / a.suite;
            fs::create_directories(dir);
            cfg.experiment.output_dir = dir;

            RunManifest manifest(a.suite, cfg.experiment.seed, cfg.canonical);
            const auto manifest_path = dir / "manifest.txt";
            auto emit = [&](const std::string &name, const std::function<void(std::ostream &)> &writer) {
                std::ostringstream os;
                writer(os);
                io::write_file(dir / name, os.str());
                manifest.add_artifact(dir / name, dir);
            };

            try
            {
                std::ostringstream summary;
                summary << a.suite << ':';
                if (a.suite == "grid")
                {
                    run.progress("experiment grid: running");
                    const auto res = run_localization_grid(cfg.experiment);
                    emit("records.csv", [&](std::ostream &os) { write_grid_records_csv(os, res.records); });
                    emit("statistics.csv", [&](std::ostream &os) { write_statistics_csv(os, res.stats); });
                    emit("cdf.csv", [&](std::ostream &os) { write_cdf_csv(os, res.stats); });
                    const auto &s = res.stats;
                    summary << " samples=" << s.samples << " failures=" << s.failures
                            << " fraction_within_9deg=" << fmt(s.fraction_within_9deg)
                            << " std_theta_deg=" << fmt(s.std_theta_deg) << " std_phi_deg=" << fmt(s.std_phi_deg)
                            << " total_deviation_deg=" << fmt(s.total_deviation_deg)
                            << " max_error_deg=" << fmt(s.max_error_deg);
                }
                else if (a.suite == "gain")
                {
                    run.progress("experiment gain: running");
                    const auto phis = cfg.sweep.azimuths();
                    const auto pts = gain_sweep(cfg.experiment, phis, cfg.sweep.theta_deg);
                    emit("gain.csv", [&](std::ostream &os) { write_gain_csv(os, pts); });
                    std::size_t used = 0;
                    const double mean = mean_gain(pts, used);
                    double lo = std::numeric_limits<double>::infinity();
                    for (const auto &p : pts)
                        if (p.status == "ok")
                            lo = std::min(lo, p.gain_db);
                    summary << " points=" << pts.size() << " flagged=" << (pts.size() - used)
                            << " mean_gain_db=" << fmt(mean) << " min_gain_db=" << fmt(used ? lo : std::nan(""));
                }
                else if (a.suite == "ber")
                {
                    double gain = 0.0;
                    if (cfg.ber.gain_db)
                        gain = *cfg.ber.gain_db;
                    else
                    {
                        run.progress("experiment ber: running gain sweep for the link gain");
                        const auto phis = cfg.sweep.azimuths();
                        std::size_t used = 0;
                        gain = mean_gain(gain_sweep(cfg.experiment, phis, cfg.sweep.theta_deg), used);
                        if (!used)
                            throw Error("ber: the gain sweep produced no usable point");
                    }
                    const auto base = ber_curve(cfg.ber.snr_db, 0.0, cfg.ber.modulation_order);
                    const auto enh = ber_curve(cfg.ber.snr_db, gain, cfg.ber.modulation_order);
                    emit("ber.csv", [&](std::ostream &os) { write_ber_csv(os, base, enh); });
                    summary << " points=" << base.size() << " modulation_order=" << cfg.ber.modulation_order
                            << " gain_db=" << fmt(gain);
                }
                else
                {
                    run.progress("experiment showcase: running");
                    const auto sums = showcase_three_samples(cfg.experiment, cfg.showcase.samples,
                                                             cfg.showcase.pattern_step_deg);
                    for (const auto &s : sums)
                        for (const auto &f : s.files)
                            manifest.add_artifact(f, dir);
                    emit("summary.csv", [&](std::ostream &os) {
                        os << "sample,bs_theta_deg,bs_phi_deg,ue_theta_deg,ue_phi_deg,est_theta_deg,est_phi_deg,"
                              "error_deg,gain_db,status\n";
                        for (std::size_t i = 0; i < sums.size(); ++i)
                        {
                            const auto &s = sums[i];
                            os << i + 1 << ',' << fmt(s.sample.bs.theta_deg) << ',' << fmt(s.sample.bs.phi_deg) << ','
                               << fmt(s.sample.ue.theta_deg) << ',' << fmt(s.sample.ue.phi_deg) << ',';
                            if (s.estimate)
                                os << fmt(s.estimate->theta_deg) << ',' << fmt(s.estimate->phi_deg) << ','
                                   << fmt(s.error_deg) << ',' << fmt(s.gain_db) << ",ok\n";
                            else
                                os << ",,,,\"" << s.status << "\"\n";
                        }
                    });
                    double worst = 0.0, best_gain = -std::numeric_limits<double>::infinity();
                    std::size_t failed = 0;
                    for (const auto &s : sums)
                    {
                        if (!s.estimate)
                        {
                            ++failed;
                            continue;
                        }
                        worst = std::max(worst, s.error_deg);
                        best_gain = std::max(best_gain, s.gain_db);
                    }
                    if (failed)
                        throw Error("showcase: " + std::to_string(failed) + " sample(s) failed to localize");
                    summary << " samples=" << sums.size() << " max_error_deg=" << fmt(worst)
                            << " max_gain_db=" << fmt(best_gain);
                }
                manifest.write(manifest_path);
                run.out_ << summary.str() << '\n';
            }
            catch (const std::exception &e)
            {
                manifest.mark_failed(e.what());
                manifest.write(manifest_path);
                throw;
            }
        }

        int exit_code_for(const std::exception &e)
        {
            if (dynamic_cast<const NoPeak *>(&e) || dynamic_cast<const AllCandidatesInfeasible *>(&e))
                return exit_no_estimate;
            if (dynamic_cast<const SectorAmbiguous *>(&e) || dynamic_cast<const SectorEmpty *>(&e))
                return exit_sector;
            if (dynamic_cast<const IoError *>(&e) || dynamic_cast<const FormatError *>(&e) ||
                dynamic_cast<const fs::filesystem_error *>(&e))
                return exit_io;
            if (dynamic_cast<const InvalidArgument *>(&e))
                return exit_usage;
            return exit_failure;
        }
    }

    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"holoris: holographic RIS simulation, localization and beamforming", "holoris"};
        app.require_subcommand(1);

        Globals globals;
        std::uint64_t seed_value = 0;
        app.add_flag("-q,--quiet", globals.quiet, "Suppress progress messages on standard error");
        auto *seed_opt = app.add_option("--seed", seed_value, "Override the configuration seed");

        SimulateArgs sim;
        auto *simulate = app.add_subcommand("simulate", "Synthesize hologram CSV files from a configuration");
        simulate->add_option("-c,--config", sim.config, "RunConfig JSON file (defaults when omitted)");
        simulate->add_option("-o,--output", sim.output, "Output CSV; several tags produce <stem>_tag<k>.csv")
            ->capture_default_str();

        LocalizeArgs loc;
        auto *localize_cmd = app.add_subcommand("localize", "Localize the user from a hologram CSV file");
        localize_cmd->add_option("hologram", loc.hologram, "Hologram CSV file")->required();
        localize_cmd->add_option("--bs", loc.bs, "Base-station direction theta,phi in degrees")->required();
        localize_cmd->add_option("--zero-pad", loc.zero_pad, "FFT zero-padding factor")->capture_default_str();
        localize_cmd->add_option("--dc-guard", loc.dc_guard, "DC exclusion half-width in bins")->capture_default_str();
        localize_cmd->add_option("--significance", loc.significance, "Minimum peak to median ratio")
            ->capture_default_str();
        auto *sector_opt = localize_cmd->add_option("--sector", loc.sector, "Admissible azimuth range phi_min:phi_max");
        auto *sector_theta_opt =
            localize_cmd->add_option("--sector-theta", loc.sector_theta, "Admissible elevation range theta_min:theta_max");
        localize_cmd->add_option("--oracle-truth", loc.oracle_truth, "Pick the candidate closest to theta,phi")
            ->excludes(sector_opt)
            ->excludes(sector_theta_opt);
        localize_cmd->add_flag("--ml-refine", loc.ml_refine, "Refine with a maximum-likelihood grid search");
        localize_cmd->add_option("--ml-halfwidth", loc.ml_halfwidth, "Refinement half-width in degrees")
            ->capture_default_str();
        localize_cmd->add_option("--ml-step", loc.ml_step, "Refinement grid step in degrees")->capture_default_str();

        CodegenArgs gen;
        auto *codegen = app.add_subcommand("codegen", "Generate a 1-bit coding file");
        codegen->add_option("--mode", gen.mode, "far or near")->required()->check(CLI::IsMember({"far", "near"}));
        codegen->add_option("--bs", gen.bs, "Base-station direction theta,phi in degrees")->required();
        codegen->add_option("--ue", gen.ue, "User direction theta,phi in degrees")->required();
        codegen->add_option("--bs-range", gen.bs_range, "Base-station distance in meters (near mode)");
        codegen->add_option("--ue-range", gen.ue_range, "User distance in meters (near mode)");
        codegen->add_option("-o,--output", gen.output, "Output coding file")->required();
        codegen->add_option("-c,--config", gen.config, "RunConfig JSON file for the array geometry");

        PatternArgs pat;
        auto *pattern_cmd = app.add_subcommand("pattern", "Evaluate the far-field radiation pattern of a coding file");
        pattern_cmd->add_option("coding", pat.coding, "Coding file")->required();
        pattern_cmd->add_option("--bs", pat.bs, "Base-station direction theta,phi in degrees")->required();
        pattern_cmd->add_option("--step", pat.step, "Angular grid step in degrees")->capture_default_str();
        pattern_cmd->add_option("-o,--output", pat.output, "Output pattern CSV")->required();
        pattern_cmd->add_option("-c,--config", pat.config, "RunConfig JSON file for the array geometry");

        ExperimentArgs exp;
        auto *experiment = app.add_subcommand("experiment", "Run an experiment suite: grid, gain, ber or showcase");
        experiment->add_option("suite", exp.suite, "Suite name")->required();
        experiment->add_option("-c,--config", exp.config, "RunConfig JSON file (defaults when omitted)");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::CallForHelp &e)
        {
            return app.exit(e, out, err);
        }
        catch (const CLI::CallForAllHelp &e)
        {
            return app.exit(e, out, err);
        }
        catch (const CLI::ParseError &e)
        {
            app.exit(e, out, err);
            return exit_usage;
        }

        if (*seed_opt)
            globals.seed = seed_value;
        const Runner run(globals, out, err);
        try
        {
            if (*simulate)
                cmd_simulate(run, sim);
            else if (*localize_cmd)
                cmd_localize(run, loc);
            else if (*codegen)
                cmd_codegen(run, gen);
            else if (*pattern_cmd)
                cmd_pattern(run, pat);
            else
                cmd_experiment(run, exp);
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_code_for(e);
        }
        return exit_ok;
    }
}
