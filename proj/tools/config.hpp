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

#include <holoris/errors.hpp>
#include <holoris/experiments.hpp>
#include <holoris/geometry.hpp>
#include <holoris/localization.hpp>
#include <holoris/wavefield.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace holoris::cli
{
    // Schema violation in a run configuration; the message starts with the offending field path.
    class ConfigError : public InvalidArgument
    {
    public:
        using InvalidArgument::InvalidArgument;
    };

    enum class SourceRole
    {
        bs,
        ue
    };

    struct SourceSpec
    {
        SourceRole role = SourceRole::ue;
        Source source;
    };

    struct SweepSettings
    {
        double theta_deg = 0.0;
        double phi_min_deg = -60.0;
        double phi_max_deg = 60.0;
        double phi_step_deg = 15.0;

        std::vector<double> azimuths() const;
    };

    struct BerSettings
    {
        std::vector<double> snr_db{0.0, 3.0, 6.0, 9.0, 12.0, 15.0, 18.0, 21.0, 24.0};
        std::optional<double> gain_db; // empty: use the mean gain of a gain sweep
        unsigned modulation_order = 64;
    };

    struct ShowcaseSettings
    {
        std::vector<ShowcaseSample> samples = default_showcase_samples();
        double pattern_step_deg = 2.0;
    };

    // Effective configuration after defaults and validation.
    struct RunConfig
    {
        ArrayGeometry geometry = ArrayGeometry::reference_panel();
        DetectorModel detector;
        std::vector<SourceSpec> sources;
        LocalizeOptions localize;
        std::string disambiguation = "none"; // none | oracle | sector
        SectorDisambiguation sector;
        ExperimentConfig experiment;
        SweepSettings sweep;
        BerSettings ber;
        ShowcaseSettings showcase;
        std::string canonical; // compact JSON of the document as given, for manifests

        std::vector<Source> plain_sources() const;
        std::optional<AngularLocation> bs_direction() const; // first far-field source with role bs
    };

    // Parses and validates a JSON document. Unknown keys are rejected. Throws ConfigError.
    RunConfig parse_run_config(std::string_view json_text);
    RunConfig load_run_config(const std::filesystem::path &path);
    RunConfig default_run_config();
}
