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

#include "config.hpp"

#include <holoris/errors.hpp>
#include <holoris/formats.hpp>

#include <json.hpp>

#include <cmath>
#include <initializer_list>
#include <set>

namespace holoris::cli
{
    using json = nlohmann::json;

    namespace
    {
        // View of one JSON object with its dotted path, for error messages and unknown-key checks.
        class Section
        {
        public:
            Section(const json &j, std::string path, std::initializer_list<const char *> allowed)
                : j_(j), path_(std::move(path))
            {
                if (!j_.is_object())
                    fail(path_.empty() ? "<root>" : path_, "must be an object");
                std::set<std::string> keys(allowed.begin(), allowed.end());
                for (const auto &[k, v] : j_.items())
                    if (!keys.count(k))
                        fail(field(k), "unknown key");
            }

            [[noreturn]] static void fail(const std::string &path, const std::string &what)
            {
                throw ConfigError(path + ": " + what);
            }

            std::string field(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }
            bool has(const char *key) const { return j_.contains(key); }
            const json &raw(const char *key) const { return j_.at(key); }

            double number(const char *key, double def) const
            {
                if (!has(key))
                    return def;
                const auto &v = j_.at(key);
                if (!v.is_number())
                    fail(field(key), "must be a number");
                const double d = v.get<double>();
                if (!std::isfinite(d))
                    fail(field(key), "must be finite");
                return d;
            }

            long long integer(const char *key, long long def) const
            {
                if (!has(key))
                    return def;
                const auto &v = j_.at(key);
                if (v.is_number_integer())
                    return v.get<long long>();
                if (v.is_number_float())
                {
                    const double d = v.get<double>();
                    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9.0e15)
                        return static_cast<long long>(d);
                }
                fail(field(key), "must be an integer");
            }

            bool boolean(const char *key, bool def) const
            {
                if (!has(key))
                    return def;
                if (!j_.at(key).is_boolean())
                    fail(field(key), "must be true or false");
                return j_.at(key).get<bool>();
            }

            std::string string(const char *key, const std::string &def, std::initializer_list<const char *> choices) const
            {
                if (!has(key))
                    return def;
                if (!j_.at(key).is_string())
                    fail(field(key), "must be a string");
                const auto s = j_.at(key).get<std::string>();
                for (const char *c : choices)
                    if (s == c)
                        return s;
                std::string list;
                for (const char *c : choices)
                    list += (list.empty() ? "" : ", ") + std::string(c);
                fail(field(key), "must be one of " + list);
            }

            std::vector<double> numbers(const char *key, std::vector<double> def) const
            {
                if (!has(key))
                    return def;
                const auto &v = j_.at(key);
                if (!v.is_array())
                    fail(field(key), "must be an array of numbers");
                std::vector<double> out;
                for (std::size_t i = 0; i < v.size(); ++i)
                {
                    if (!v[i].is_number())
                        fail(field(key) + "[" + std::to_string(i) + "]", "must be a number");
                    out.push_back(v[i].get<double>());
                }
                return out;
            }

            Section child(const char *key, std::initializer_list<const char *> allowed) const
            {
                return Section(j_.at(key), field(key), allowed);
            }

        private:
            const json &j_;
            std::string path_;
        };

        AngularLocation angle_pair(const json &v, const std::string &path)
        {
            if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
                Section::fail(path, "must be a [theta_deg, phi_deg] pair");
            const AngularLocation a{v[0].get<double>(), v[1].get<double>()};
            if (!in_front_half_space(a))
                Section::fail(path, "angles must satisfy |theta|, |phi| < 90");
            return a;
        }

        void require(bool ok, const std::string &path, const std::string &what)
        {
            if (!ok)
                Section::fail(path, what);
        }

        void parse_geometry(const Section &root, RunConfig &cfg)
        {
            if (!root.has("geometry"))
                return;
            const auto g = root.child("geometry", {"n_x", "n_z", "d_x_m", "d_z_m", "f_c_hz"});
            const auto nx = g.integer("n_x", 32), nz = g.integer("n_z", 32);
            const double dx = g.number("d_x_m", 0.02), dz = g.number("d_z_m", 0.02);
            const auto fc = g.integer("f_c_hz", 3500000000LL);
            require(nx >= 2, g.field("n_x"), "must be >= 2");
            require(nz >= 2, g.field("n_z"), "must be >= 2");
            require(dx > 0.0, g.field("d_x_m"), "must be > 0");
            require(dz > 0.0, g.field("d_z_m"), "must be > 0");
            require(fc > 0, g.field("f_c_hz"), "must be > 0");
            cfg.geometry = ArrayGeometry(std::size_t(nz), std::size_t(nx), dz, dx, double(fc));
        }

        void parse_detector(const Section &root, RunConfig &cfg)
        {
            if (!root.has("detector"))
                return;
            const auto d = root.child("detector", {"noise_std", "floor", "ceiling", "agc", "phase_jitter_std"});
            auto &det = cfg.detector;
            det.noise_std = d.number("noise_std", det.noise_std);
            det.floor = d.number("floor", det.floor);
            det.ceiling = d.number("ceiling", det.ceiling);
            det.agc_enabled = d.boolean("agc", det.agc_enabled);
            det.phase_jitter_std = d.number("phase_jitter_std", det.phase_jitter_std);
            require(det.noise_std >= 0.0, d.field("noise_std"), "must be >= 0");
            require(det.phase_jitter_std >= 0.0, d.field("phase_jitter_std"), "must be >= 0");
            require(det.floor >= 0.0, d.field("floor"), "must be >= 0");
            require(det.ceiling > det.floor, d.field("ceiling"), "must be greater than floor");
        }

        void parse_sources(const Section &root, RunConfig &cfg)
        {
            if (!root.has("sources"))
                return;
            const auto &arr = root.raw("sources");
            require(arr.is_array(), "sources", "must be an array");
            cfg.sources.clear();
            for (std::size_t i = 0; i < arr.size(); ++i)
            {
                const Section s(arr[i], "sources[" + std::to_string(i) + "]",
                                {"role", "kind", "theta_deg", "phi_deg", "x_m", "y_m", "z_m", "amplitude",
                                 "phase_rad", "frequency_tag"});
                SourceSpec spec;
                spec.role = s.string("role", "ue", {"bs", "ue"}) == "bs" ? SourceRole::bs : SourceRole::ue;
                const bool far = s.string("kind", "far", {"far", "near"}) == "far";
                const double amp = s.number("amplitude", 1.0);
                const double phase = s.number("phase_rad", 0.0);
                const auto tag = s.integer("frequency_tag", 0);
                require(amp >= 0.0, s.field("amplitude"), "must be >= 0");
                require(tag >= 0 && tag <= 0xffffffffLL, s.field("frequency_tag"), "must be a non-negative 32-bit integer");
                if (far)
                {
                    require(!s.has("x_m") && !s.has("y_m") && !s.has("z_m"), s.field("kind"),
                            "far-field sources take theta_deg/phi_deg, not x_m/y_m/z_m");
                    const AngularLocation a{s.number("theta_deg", 0.0), s.number("phi_deg", 0.0)};
                    require(in_front_half_space(a), s.field("theta_deg"), "angles must satisfy |theta|, |phi| < 90");
                    spec.source = Source::far(a, amp, phase, std::uint32_t(tag));
                }
                else
                {
                    require(!s.has("theta_deg") && !s.has("phi_deg"), s.field("kind"),
                            "near-field sources take x_m/y_m/z_m, not angles");
                    const Vec3 p{s.number("x_m", 0.0), s.number("y_m", 1.0), s.number("z_m", 0.0)};
                    require(p.y > 0.0, s.field("y_m"), "must be > 0 (front half-space)");
                    spec.source = Source::near(p, amp, phase, std::uint32_t(tag));
                }
                cfg.sources.push_back(spec);
            }
        }

        void parse_localization(const Section &root, RunConfig &cfg)
        {
            if (!root.has("localization"))
                return;
            const auto l = root.child("localization", {"zero_pad_factor", "dc_guard", "significance", "disambiguation", "sector"});
            const auto pad = l.integer("zero_pad_factor", 1);
            const auto guard = l.integer("dc_guard", 0);
            require(pad >= 1 && pad <= 64, l.field("zero_pad_factor"), "must be in [1, 64]");
            require(guard >= 0, l.field("dc_guard"), "must be >= 0");
            cfg.localize.zero_pad_factor = std::size_t(pad);
            cfg.localize.peak.dc_guard = std::size_t(guard);
            cfg.localize.peak.significance = l.number("significance", cfg.localize.peak.significance);
            require(cfg.localize.peak.significance >= 0.0, l.field("significance"), "must be >= 0");
            cfg.disambiguation = l.string("disambiguation", "none", {"none", "oracle", "sector"});
            if (l.has("sector"))
            {
                const auto s = l.child("sector", {"theta_min_deg", "theta_max_deg", "phi_min_deg", "phi_max_deg"});
                auto &sec = cfg.sector;
                sec.theta_min = s.number("theta_min_deg", sec.theta_min);
                sec.theta_max = s.number("theta_max_deg", sec.theta_max);
                sec.phi_min = s.number("phi_min_deg", sec.phi_min);
                sec.phi_max = s.number("phi_max_deg", sec.phi_max);
                require(sec.theta_min <= sec.theta_max, s.field("theta_max_deg"), "must be >= theta_min_deg");
                require(sec.phi_min <= sec.phi_max, s.field("phi_max_deg"), "must be >= phi_min_deg");
            }
        }

        void parse_experiment(const Section &root, RunConfig &cfg)
        {
            if (!root.has("experiment"))
                return;
            const auto e = root.child("experiment", {"trials", "seed", "output_dir", "bs_locations", "ue_theta_deg",
                                                     "ue_phi_deg", "coding_mode", "bs_range_m", "ue_range_m",
                                                     "insertion_loss_db", "sweep", "ber", "showcase"});
            auto &x = cfg.experiment;
            const auto trials = e.integer("trials", 1);
            require(trials >= 1, e.field("trials"), "must be >= 1");
            x.trials = std::size_t(trials);
            const auto seed = e.integer("seed", 0);
            require(seed >= 0, e.field("seed"), "must be >= 0");
            x.seed = std::uint64_t(seed);
            if (e.has("output_dir"))
            {
                require(e.raw("output_dir").is_string(), e.field("output_dir"), "must be a string");
                x.output_dir = e.raw("output_dir").get<std::string>();
            }
            if (e.has("bs_locations"))
            {
                const auto &arr = e.raw("bs_locations");
                require(arr.is_array() && !arr.empty(), e.field("bs_locations"), "must be a non-empty array");
                x.bs_locations.clear();
                for (std::size_t i = 0; i < arr.size(); ++i)
                    x.bs_locations.push_back(angle_pair(arr[i], e.field("bs_locations") + "[" + std::to_string(i) + "]"));
            }
            if (e.has("ue_theta_deg") || e.has("ue_phi_deg"))
            {
                const auto thetas = e.numbers("ue_theta_deg", {0.0, 15.0, -15.0});
                const auto phis = e.numbers("ue_phi_deg", {0.0, 15.0, -15.0, 30.0, -30.0, 45.0, -45.0, 60.0, -60.0});
                x.ue_locations.clear();
                for (double t : thetas)
                    for (double p : phis)
                    {
                        require(in_front_half_space({t, p}), e.field("ue_theta_deg"), "angles must satisfy |theta|, |phi| < 90");
                        x.ue_locations.push_back({t, p});
                    }
            }
            x.coding_mode = e.string("coding_mode", "far", {"far", "near"}) == "far" ? CodingMode::far_field : CodingMode::near_field;
            x.bs_range_m = e.number("bs_range_m", x.bs_range_m);
            x.ue_range_m = e.number("ue_range_m", x.ue_range_m);
            require(x.bs_range_m > 0.0, e.field("bs_range_m"), "must be > 0");
            require(x.ue_range_m > 0.0, e.field("ue_range_m"), "must be > 0");
            x.insertion_loss_db = e.number("insertion_loss_db", 0.0);

            if (e.has("sweep"))
            {
                const auto s = e.child("sweep", {"theta_deg", "phi_min_deg", "phi_max_deg", "phi_step_deg"});
                auto &w = cfg.sweep;
                w.theta_deg = s.number("theta_deg", w.theta_deg);
                w.phi_min_deg = s.number("phi_min_deg", w.phi_min_deg);
                w.phi_max_deg = s.number("phi_max_deg", w.phi_max_deg);
                w.phi_step_deg = s.number("phi_step_deg", w.phi_step_deg);
                require(w.phi_step_deg > 0.0, s.field("phi_step_deg"), "must be > 0");
                require(w.phi_min_deg <= w.phi_max_deg, s.field("phi_max_deg"), "must be >= phi_min_deg");
                require(std::abs(w.phi_min_deg) < 90.0 && std::abs(w.phi_max_deg) < 90.0 && std::abs(w.theta_deg) < 90.0,
                        s.field("phi_min_deg"), "sweep angles must lie within (-90, 90)");
            }
            if (e.has("ber"))
            {
                const auto b = e.child("ber", {"snr_db", "gain_db", "modulation_order"});
                cfg.ber.snr_db = b.numbers("snr_db", cfg.ber.snr_db);
                if (b.has("gain_db"))
                    cfg.ber.gain_db = b.number("gain_db", 0.0);
                const auto order = b.integer("modulation_order", 64);
                require(order == 4 || order == 16 || order == 64, b.field("modulation_order"), "must be 4, 16 or 64");
                cfg.ber.modulation_order = unsigned(order);
            }
            if (e.has("showcase"))
            {
                const auto s = e.child("showcase", {"samples", "pattern_step_deg"});
                cfg.showcase.pattern_step_deg = s.number("pattern_step_deg", cfg.showcase.pattern_step_deg);
                require(cfg.showcase.pattern_step_deg > 0.0, s.field("pattern_step_deg"), "must be > 0");
                if (s.has("samples"))
                {
                    const auto &arr = s.raw("samples");
                    require(arr.is_array() && arr.size() == 3, s.field("samples"), "must be an array of exactly 3 samples");
                    cfg.showcase.samples.clear();
                    for (std::size_t i = 0; i < 3; ++i)
                    {
                        const Section one(arr[i], s.field("samples") + "[" + std::to_string(i) + "]", {"bs", "ue"});
                        require(one.has("bs") && one.has("ue"), one.field("bs"), "both bs and ue are required");
                        cfg.showcase.samples.push_back({angle_pair(one.raw("bs"), one.field("bs")),
                                                        angle_pair(one.raw("ue"), one.field("ue"))});
                    }
                }
            }
        }

        void finish(RunConfig &cfg)
        {
            auto &x = cfg.experiment;
            x.geometry = cfg.geometry;
            x.detector = cfg.detector;
            x.localize = cfg.localize;
            if (cfg.disambiguation == "oracle")
                x.disambiguation = OracleDisambiguation{};
            else if (cfg.disambiguation == "sector")
                x.disambiguation = cfg.sector;
            else
                x.disambiguation = NoDisambiguation{};
        }
    }

    std::vector<double> SweepSettings::azimuths() const
    {
        std::vector<double> out;
        const auto count = std::size_t(std::floor((phi_max_deg - phi_min_deg) / phi_step_deg + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(phi_min_deg + double(i) * phi_step_deg);
        return out;
    }

    std::vector<Source> RunConfig::plain_sources() const
    {
        std::vector<Source> out;
        for (const auto &s : sources)
            out.push_back(s.source);
        return out;
    }

    std::optional<AngularLocation> RunConfig::bs_direction() const
    {
        for (const auto &s : sources)
            if (s.role == SourceRole::bs && s.source.is_far_field())
                return std::get<FarField>(s.source.kind).direction;
        return std::nullopt;
    }

    RunConfig default_run_config()
    {
        RunConfig cfg;
        cfg.sources = {{SourceRole::bs, Source::far({0.0, 0.0})}, {SourceRole::ue, Source::far({0.0, 30.0})}};
        cfg.canonical = "{}";
        finish(cfg);
        return cfg;
    }

    RunConfig parse_run_config(std::string_view json_text)
    {
        json doc;
        try
        {
            doc = json::parse(json_text);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(std::string("<root>: invalid JSON: ") + e.what());
        }

        RunConfig cfg = default_run_config();
        const Section root(doc, "", {"geometry", "detector", "sources", "localization", "experiment"});
        parse_geometry(root, cfg);
        parse_detector(root, cfg);
        parse_sources(root, cfg);
        parse_localization(root, cfg);
        parse_experiment(root, cfg);
        cfg.canonical = doc.dump();
        finish(cfg);
        return cfg;
    }

    RunConfig load_run_config(const std::filesystem::path &path)
    {
        return parse_run_config(io::read_file(path));
    }
}
