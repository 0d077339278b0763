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
#include <holoris/localization.hpp>
#include <holoris/wavefield.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace holoris::io
{
    // Shortest decimal representation that parses back to the same double.
    std::string format_double(double v);

    // Strict decimal parse of a whole token; throws FormatError with the given line number.
    double parse_double(std::string_view token, std::size_t line);

    // Hologram CSV (holoris-hologram v1):
    //   # holoris-hologram v1
    //   # f_c_hz=<int>
    //   # d_x_m=<decimal>
    //   # d_z_m=<decimal>
    //   # n_x=<int>
    //   # n_z=<int>
    //   # frequency_tag=<int>
    // followed by n_z rows of n_x comma-separated non-negative values (row m = z index).
    void write_hologram_csv(std::ostream &os, const Hologram &holo);
    Hologram read_hologram_csv(std::istream &is);
    void save_hologram_csv(const std::filesystem::path &path, const Hologram &holo);
    Hologram load_hologram_csv(const std::filesystem::path &path);

    // Coding file (holoris-coding v1): header lines `# holoris-coding v1`, `# n_x=<int>`, `# n_z=<int>`,
    // then n_z lines of n_x characters from {0, 1}.
    void write_coding(std::ostream &os, const CodingMatrix &coding);
    CodingMatrix read_coding(std::istream &is);
    void save_coding(const std::filesystem::path &path, const CodingMatrix &coding);
    CodingMatrix load_coding(const std::filesystem::path &path);

    // Flat key=value record, one key per line; absent candidates are written as `none`.
    std::string localization_report(const LocalizationResult &result);

    // CSV with header theta_deg,phi_deg,power_db.
    void write_pattern_csv(std::ostream &os, const RadiationPattern &pat);

    // Spectrum magnitudes in the hologram layout, header `# holoris-spectrum v1` + size lines.
    void write_spectrum_csv(std::ostream &os, const Spectrum &spec);

    // Plain comma-separated table with one header line, as written by the experiment result writers.
    struct CsvTable
    {
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;

        // Column index by name; throws FormatError when absent.
        std::size_t column(std::string_view name) const;
        // Cell parsed as a double; throws FormatError with the file line number.
        double number(std::size_t row, std::size_t col) const;
        bool operator==(const CsvTable &) const = default;
    };

    // Every row must have as many cells as the header. Throws FormatError.
    CsvTable read_csv_table(std::istream &is);
    void write_csv_table(std::ostream &os, const CsvTable &table);

    // Reads a whole file, throwing IoError when it cannot be opened.
    std::string read_file(const std::filesystem::path &path);
    // Writes a whole file, throwing IoError on failure.
    void write_file(const std::filesystem::path &path, std::string_view content);
}
