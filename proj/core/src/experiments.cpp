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

#include <holoris/experiments.hpp>
#include <holoris/errors.hpp>
#include <holoris/formats.hpp>

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace holoris
{
    std::vector<AngularLocation> reference_bs_locations()
    {
        return {{0.0, 0.0}, {-15.0, 0.0}, {-15.0, -30.0}, {0.0, -30.0}};
    }

    std::vector<AngularLocation> reference_ue_locations()
    {
        std::vector<AngularLocation> out;
        for (double theta : {0.0, 15.0, -15.0})
            for (double phi : {0.0, 15.0, -15.0, 30.0, -30.0, 45.0, -45.0, 60.0, -60.0})
                out.push_back({theta, phi});
        return out;
    }

    void ExperimentConfig::validate() const
    {
        if (trials < 1)
            throw InvalidArgument("experiment.trials must be >= 1");
        detector.validate();
        if (localize.zero_pad_factor < 1)
            throw InvalidArgument("localization.zero_pad_factor must be >= 1");
        if (bs_locations.empty())
            throw InvalidArgument("experiment.bs_locations must not be empty");
        for (const auto &l : bs_locations)
            if (!in_front_half_space(l))
                throw InvalidArgument("experiment.bs_locations: angles must satisfy |theta|, |phi| < 90 deg");
        for (const auto &l : ue_locations)
            if (!in_front_half_space(l))
                throw InvalidArgument("experiment.ue_locations: angles must satisfy |theta|, |phi| < 90 deg");
        if (!(bs_range_m > 0.0) || !(ue_range_m > 0.0))
            throw InvalidArgument("experiment ranges must be positive");
    }

    std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept
    {
        // splitmix64 finalizer chained over the coordinates
        auto mix = [](std::uint64_t z) {
            z += 0x9e3779b97f4a7c15ULL;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        };
        std::uint64_t h = mix(seed);
        for (std::uint64_t v : {a, b, c})
            h = mix(h ^ v);
        return h;
    }

    ErrorStatistics error_statistics(std::span<const TrialRecord> records)
    {
        ErrorStatistics st;
        std::vector<double> totals;
        double sum_t = 0.0, sum_p = 0.0;
        std::size_t within = 0;
        for (const auto &r : records)
        {
            if (!r.estimate)
            {
                ++st.failures;
                continue;
            }
            ++st.samples;
            sum_t += r.err_theta_deg * r.err_theta_deg;
            sum_p += r.err_phi_deg * r.err_phi_deg;
            totals.push_back(r.err_total_deg);
            if (r.err_total_deg <= 9.0)
                ++within;
        }
        if (st.samples >= 2)
        {
            st.std_theta_deg = std::sqrt(sum_t / double(st.samples - 1));
            st.std_phi_deg = std::sqrt(sum_p / double(st.samples - 1));
        }
        st.total_deviation_deg = std::hypot(st.std_theta_deg, st.std_phi_deg);
        if (!records.empty())
            st.fraction_within_9deg = double(within) / double(records.size());

        std::sort(totals.begin(), totals.end());
        if (!totals.empty())
            st.max_error_deg = totals.back();
        for (std::size_t i = 0; i < totals.size(); ++i)
        {
            // collapse ties so each error value appears once with its final fraction
            if (i + 1 < totals.size() && totals[i + 1] == totals[i])
                continue;
            st.cdf.emplace_back(totals[i], double(i + 1) / double(totals.size()));
        }
        return st;
    }

    GridResult run_localization_grid(const ExperimentConfig &cfg)
    {
        cfg.validate();
        GridResult out;
        for (std::size_t b = 0; b < cfg.bs_locations.size(); ++b)
            for (std::size_t u = 0; u < cfg.ue_locations.size(); ++u)
            {
                const auto bs = cfg.bs_locations[b];
                const auto ue = cfg.ue_locations[u];
                if (bs == ue)
                    continue;
                const std::vector<Source> sources{Source::far(bs), Source::far(ue)};
                for (std::size_t t = 0; t < cfg.trials; ++t)
                {
                    TrialRecord rec{bs, ue, t, std::nullopt, "ok", 0.0, 0.0, 0.0};
                    try
                    {
                        const auto holo = synthesize_hologram(sources, cfg.geometry, cfg.detector,
                                                              trial_seed(cfg.seed, b, u, t));
                        const auto res = localize(holo.front(), bs, cfg.localize, OracleDisambiguation{ue});
                        rec.estimate = res.chosen;
                        rec.err_theta_deg = wrap_degrees(res.chosen->theta_deg - ue.theta_deg);
                        rec.err_phi_deg = wrap_degrees(res.chosen->phi_deg - ue.phi_deg);
                        rec.err_total_deg = std::hypot(rec.err_theta_deg, rec.err_phi_deg);
                    }
                    catch (const Error &e)
                    {
                        rec.status = e.what();
                    }
                    out.records.push_back(std::move(rec));
                }
            }
        out.stats = error_statistics(out.records);
        return out;
    }

    namespace
    {
        std::optional<AngularLocation> pick(const LocalizationResult &r)
        {
            if (r.chosen)
                return r.chosen;
            return r.candidate_1 ? r.candidate_1 : r.candidate_2;
        }

        CodingMatrix code_for(const ExperimentConfig &cfg, AngularLocation bs, AngularLocation ue)
        {
            if (cfg.coding_mode == CodingMode::far_field)
                return quantize_1bit(farfield_phase_profile(bs, ue, cfg.geometry));
            return quantize_1bit(nearfield_phase_profile(direction_vector(bs) * cfg.bs_range_m,
                                                         direction_vector(ue) * cfg.ue_range_m, cfg.geometry));
        }

        Source bs_source(const ExperimentConfig &cfg, AngularLocation bs)
        {
            if (cfg.coding_mode == CodingMode::far_field)
                return Source::far(bs);
            return Source::near(direction_vector(bs) * cfg.bs_range_m);
        }

        ReceiverLocation receiver(const ExperimentConfig &cfg, AngularLocation ue)
        {
            if (cfg.coding_mode == CodingMode::far_field)
                return ue;
            return direction_vector(ue) * cfg.ue_range_m;
        }
    }

    std::vector<GainPoint> gain_sweep(const ExperimentConfig &cfg, std::span<const double> phi_deg, double theta_deg)
    {
        cfg.validate();
        const auto bs = cfg.bs_locations.front();
        const auto baseline = CodingMatrix::all_zero(cfg.geometry);
        std::vector<GainPoint> out;
        for (std::size_t i = 0; i < phi_deg.size(); ++i)
        {
            GainPoint pt;
            pt.phi_deg = phi_deg[i];
            const AngularLocation ue{theta_deg, phi_deg[i]};
            try
            {
                const std::vector<Source> sources{bs_source(cfg, bs), cfg.coding_mode == CodingMode::far_field
                                                                          ? Source::far(ue)
                                                                          : Source::near(direction_vector(ue) * cfg.ue_range_m)};
                const auto holo = synthesize_hologram(sources, cfg.geometry, cfg.detector, trial_seed(cfg.seed, 0, i, 0));
                auto policy = cfg.disambiguation;
                if (std::holds_alternative<OracleDisambiguation>(policy))
                    policy = OracleDisambiguation{ue};
                const auto res = localize(holo.front(), bs, cfg.localize, policy);
                pt.estimate = pick(res);
                const auto src = bs_source(cfg, bs);
                const auto rx = receiver(cfg, ue);
                pt.gain_db = link_gain(code_for(cfg, bs, *pt.estimate), baseline, src, rx, cfg.geometry).gain_db -
                             cfg.insertion_loss_db;
                pt.gain_truth_db = link_gain(code_for(cfg, bs, ue), baseline, src, rx, cfg.geometry).gain_db -
                                   cfg.insertion_loss_db;
            }
            catch (const Error &e)
            {
                pt.status = e.what();
                pt.gain_db = pt.gain_truth_db = std::nan("");
            }
            out.push_back(std::move(pt));
        }
        return out;
    }

    double qam_bit_error_rate(double snr_db, unsigned modulation_order)
    {
        if (modulation_order != 4 && modulation_order != 16 && modulation_order != 64)
            throw InvalidArgument("qam_bit_error_rate: modulation order must be 4, 16 or 64");
        // Closed form for Gray-mapped square QAM (Cho & Yoon), per-dimension sqrt(M)-PAM.
        const auto levels = unsigned(std::lround(std::sqrt(double(modulation_order))));
        const auto bits_per_dim = unsigned(std::lround(std::log2(double(levels))));
        const double es_n0 = std::pow(10.0, snr_db / 10.0);
        const double scale = std::sqrt(3.0 * es_n0 / (2.0 * double(modulation_order - 1)));

        double total = 0.0;
        for (unsigned k = 1; k <= bits_per_dim; ++k)
        {
            const double half_weight = double(1u << (k - 1));
            const auto terms = unsigned((1.0 - std::ldexp(1.0, -int(k))) * levels);
            double pk = 0.0;
            for (unsigned i = 0; i < terms; ++i)
            {
                const double q = double(i) * half_weight / double(levels);
                const double sign = (long(std::floor(q)) % 2 == 0) ? 1.0 : -1.0;
                const double weight = half_weight - std::floor(q + 0.5);
                pk += sign * weight * std::erfc(double(2 * i + 1) * scale);
            }
            total += pk / double(levels);
        }
        return total / double(bits_per_dim);
    }

    std::vector<BerPoint> ber_curve(std::span<const double> snr_db, double gain_db, unsigned modulation_order)
    {
        std::vector<BerPoint> out;
        out.reserve(snr_db.size());
        for (double s : snr_db)
            out.push_back({s, qam_bit_error_rate(s + gain_db, modulation_order)});
        return out;
    }

    std::vector<ShowcaseSample> default_showcase_samples()
    {
        return {{{0.0, 0.0}, {0.0, 20.0}}, {{-15.0, 0.0}, {0.0, -15.0}}, {{0.0, -30.0}, {10.0, 0.0}}};
    }

    std::vector<ShowcaseSummary> showcase_three_samples(const ExperimentConfig &cfg,
                                                        std::span<const ShowcaseSample> samples,
                                                        double pattern_step_deg)
    {
        cfg.validate();
        if (samples.size() != 3)
            throw InvalidArgument("showcase: exactly three samples are required");
        const auto grid = AngleGrid::uniform(-60.0, 60.0, -80.0, 80.0, pattern_step_deg);

        std::vector<ShowcaseSummary> out;
        for (std::size_t i = 0; i < samples.size(); ++i)
        {
            const auto &s = samples[i];
            ShowcaseSummary sum{s, std::nullopt, 0.0, 0.0, "ok", {}};
            const auto dir = cfg.output_dir / ("sample_" + std::to_string(i + 1));
            std::filesystem::create_directories(dir);
            auto emit = [&](const std::string &name, const std::string &content) {
                io::write_file(dir / name, content);
                sum.files.push_back(dir / name);
            };

            const Vec3 bs_pos = direction_vector(s.bs) * cfg.bs_range_m;
            const Vec3 ue_pos = direction_vector(s.ue) * cfg.ue_range_m;
            const std::vector<Source> sources{Source::near(bs_pos), Source::near(ue_pos)};
            const auto holo = synthesize_hologram(sources, cfg.geometry, cfg.detector, trial_seed(cfg.seed, 1, i, 0));
            std::ostringstream hs, ss;
            io::write_hologram_csv(hs, holo.front());
            emit("hologram.csv", hs.str());
            io::write_spectrum_csv(ss, fft2(holo.front(), cfg.localize.zero_pad_factor));
            emit("spectrum.csv", ss.str());

            try
            {
                const auto res = localize(holo.front(), s.bs, cfg.localize, OracleDisambiguation{s.ue});
                emit("localization.txt", io::localization_report(res));
                sum.estimate = res.chosen;
                sum.error_deg = angular_error_deg(*res.chosen, s.ue);

                const auto coding = quantize_1bit(
                    nearfield_phase_profile(bs_pos, direction_vector(*res.chosen) * cfg.ue_range_m, cfg.geometry));
                std::ostringstream cs, ps;
                io::write_coding(cs, coding);
                emit("coding.txt", cs.str());

                const Source bs_src = Source::near(bs_pos);
                sum.gain_db = link_gain(coding, CodingMatrix::all_zero(cfg.geometry), bs_src, ue_pos, cfg.geometry).gain_db -
                              cfg.insertion_loss_db;
                io::write_pattern_csv(ps, pattern(coding, bs_src, cfg.geometry, grid));
                emit("pattern.csv", ps.str());
            }
            catch (const Error &e)
            {
                sum.status = e.what();
            }
            out.push_back(std::move(sum));
        }
        return out;
    }

    void write_grid_records_csv(std::ostream &os, std::span<const TrialRecord> records)
    {
        using io::format_double;
        os << "bs_theta_deg,bs_phi_deg,ue_theta_deg,ue_phi_deg,trial,est_theta_deg,est_phi_deg,"
              "err_theta_deg,err_phi_deg,err_total_deg,status\n";
        for (const auto &r : records)
        {
            os << format_double(r.bs.theta_deg) << ',' << format_double(r.bs.phi_deg) << ','
               << format_double(r.ue.theta_deg) << ',' << format_double(r.ue.phi_deg) << ',' << r.trial << ',';
            if (r.estimate)
                os << format_double(r.estimate->theta_deg) << ',' << format_double(r.estimate->phi_deg) << ','
                   << format_double(r.err_theta_deg) << ',' << format_double(r.err_phi_deg) << ','
                   << format_double(r.err_total_deg) << ",ok\n";
            else
                os << ",,,,,failed\n";
        }
    }

    void write_statistics_csv(std::ostream &os, const ErrorStatistics &st)
    {
        using io::format_double;
        os << "samples,failures,std_theta_deg,std_phi_deg,total_deviation_deg,max_error_deg,fraction_within_9deg\n"
           << st.samples << ',' << st.failures << ',' << format_double(st.std_theta_deg) << ','
           << format_double(st.std_phi_deg) << ',' << format_double(st.total_deviation_deg) << ','
           << format_double(st.max_error_deg) << ',' << format_double(st.fraction_within_9deg) << '\n';
    }

    void write_cdf_csv(std::ostream &os, const ErrorStatistics &st)
    {
        os << "error_deg,fraction\n";
        for (const auto &[e, f] : st.cdf)
            os << io::format_double(e) << ',' << io::format_double(f) << '\n';
    }

    void write_gain_csv(std::ostream &os, std::span<const GainPoint> points)
    {
        using io::format_double;
        os << "phi_deg,est_theta_deg,est_phi_deg,gain_db,gain_truth_db,status\n";
        for (const auto &p : points)
        {
            os << format_double(p.phi_deg) << ',';
            if (p.estimate)
                os << format_double(p.estimate->theta_deg) << ',' << format_double(p.estimate->phi_deg) << ','
                   << format_double(p.gain_db) << ',' << format_double(p.gain_truth_db) << ",ok\n";
            else
                os << ",,,,flagged\n";
        }
    }

    void write_ber_csv(std::ostream &os, std::span<const BerPoint> baseline, std::span<const BerPoint> enhanced)
    {
        if (baseline.size() != enhanced.size())
            throw InvalidArgument("write_ber_csv: curves differ in length");
        os << "tx_power_proxy_db,ber_baseline,ber_enhanced\n";
        for (std::size_t i = 0; i < baseline.size(); ++i)
            os << io::format_double(baseline[i].tx_power_proxy_db) << ',' << io::format_double(baseline[i].ber) << ','
               << io::format_double(enhanced[i].ber) << '\n';
    }

    std::string sha256_hex(std::string_view bytes)
    {
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
            throw Error("sha256: digest failed");
        static constexpr char hex[] = "0123456789abcdef";
        std::string out;
        for (unsigned i = 0; i < len; ++i)
        {
            out += hex[digest[i] >> 4];
            out += hex[digest[i] & 0xf];
        }
        return out;
    }

    RunManifest::RunManifest(std::string suite, std::uint64_t seed, std::string config_text)
        : suite_(std::move(suite)), seed_(seed), config_text_(std::move(config_text)) {}

    void RunManifest::add_artifact(const std::filesystem::path &path, const std::filesystem::path &root)
    {
        const auto name = root.empty() ? path.filename() : path.lexically_relative(root);
        artifacts_.emplace_back(name.generic_string(), sha256_hex(io::read_file(path)));
    }

    void RunManifest::mark_failed(std::string reason)
    {
        failed_ = true;
        reason_ = std::move(reason);
    }

    std::string RunManifest::render() const
    {
        std::ostringstream os;
        os << "# holoris-manifest v1\n"
           << "suite=" << suite_ << '\n'
           << "seed=" << seed_ << '\n'
           << "status=" << (failed_ ? "FAILED" : "OK") << '\n';
        if (failed_)
            os << "failure=" << reason_ << '\n';
        os << "config=" << config_text_ << '\n';
        for (const auto &[name, sum] : artifacts_)
            os << "artifact=" << name << " sha256=" << sum << '\n';
        return os.str();
    }

    void RunManifest::write(const std::filesystem::path &path) const
    {
        io::write_file(path, render());
    }
}
