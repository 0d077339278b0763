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

#include <holoris/formats.hpp>
#include <holoris/errors.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace holoris::io
{
    namespace
    {
        class LineReader
        {
        public:
            explicit LineReader(std::istream &is) : is_(is) {}

            // Next line without its terminator; false at end of input.
            bool next(std::string &line)
            {
                if (!std::getline(is_, line))
                    return false;
                ++number_;
                if (!line.empty() && line.back() == '\r')
                    line.pop_back();
                return true;
            }

            std::string require(const char *what)
            {
                std::string line;
                if (!next(line))
                    throw FormatError(std::string("unexpected end of file, expected ") + what, number_ + 1);
                return line;
            }

            std::size_t number() const noexcept { return number_; }

        private:
            std::istream &is_;
            std::size_t number_ = 0;
        };

        std::string header_value(LineReader &in, std::string_view key)
        {
            const std::string line = in.require(std::string(key).c_str());
            const std::string prefix = "# " + std::string(key) + "=";
            if (line.compare(0, prefix.size(), prefix) != 0)
                throw FormatError("expected header '" + prefix + "...'", in.number());
            return line.substr(prefix.size());
        }

        long long parse_integer(std::string_view token, std::size_t line)
        {
            long long v = 0;
            const auto *end = token.data() + token.size();
            const auto [ptr, ec] = std::from_chars(token.data(), end, v);
            if (ec != std::errc{} || ptr != end || token.empty())
                throw FormatError("invalid integer '" + std::string(token) + "'", line);
            return v;
        }

        std::size_t parse_size(LineReader &in, std::string_view key)
        {
            const auto v = parse_integer(header_value(in, key), in.number());
            if (v < 1)
                throw FormatError(std::string(key) + " must be positive", in.number());
            return std::size_t(v);
        }

        void expect_magic(LineReader &in, std::string_view magic)
        {
            const std::string line = in.require("magic header");
            if (line != magic)
                throw FormatError("expected '" + std::string(magic) + "'", in.number());
        }

        std::ofstream open_out(const std::filesystem::path &path)
        {
            std::ofstream os(path, std::ios::binary);
            if (!os)
                throw IoError("cannot open '" + path.string() + "' for writing");
            return os;
        }

        std::ifstream open_in(const std::filesystem::path &path)
        {
            std::ifstream is(path, std::ios::binary);
            if (!is)
                throw IoError("cannot open '" + path.string() + "' for reading");
            return is;
        }

        void check_stream(const std::ostream &os, const std::filesystem::path &path)
        {
            if (!os)
                throw IoError("failed writing '" + path.string() + "'");
        }

        std::string optional_angle(const std::optional<AngularLocation> &a, bool theta)
        {
            if (!a)
                return "none";
            return format_double(theta ? a->theta_deg : a->phi_deg);
        }
    }

    std::string format_double(double v)
    {
        char buf[64];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, ptr);
    }

    double parse_double(std::string_view token, std::size_t line)
    {
        double v = 0.0;
        const auto *end = token.data() + token.size();
        const auto [ptr, ec] = std::from_chars(token.data(), end, v);
        if (ec != std::errc{} || ptr != end || token.empty() || !std::isfinite(v))
            throw FormatError("invalid number '" + std::string(token) + "'", line);
        return v;
    }

    void write_hologram_csv(std::ostream &os, const Hologram &holo)
    {
        const auto &g = holo.geometry;
        os << "# holoris-hologram v1\n"
           << "# f_c_hz=" << std::llround(g.carrier_hz()) << '\n'
           << "# d_x_m=" << format_double(g.d_x()) << '\n'
           << "# d_z_m=" << format_double(g.d_z()) << '\n'
           << "# n_x=" << g.n_x() << '\n'
           << "# n_z=" << g.n_z() << '\n'
           << "# frequency_tag=" << holo.frequency_tag << '\n';
        for (std::size_t m = 0; m < holo.values.rows(); ++m)
        {
            for (std::size_t n = 0; n < holo.values.cols(); ++n)
            {
                if (n)
                    os << ',';
                os << format_double(holo.values(m, n));
            }
            os << '\n';
        }
    }

    Hologram read_hologram_csv(std::istream &is)
    {
        LineReader in(is);
        expect_magic(in, "# holoris-hologram v1");
        const auto fc = parse_integer(header_value(in, "f_c_hz"), in.number());
        const double dx = parse_double(header_value(in, "d_x_m"), in.number());
        const double dz = parse_double(header_value(in, "d_z_m"), in.number());
        const std::size_t nx = parse_size(in, "n_x");
        const std::size_t nz = parse_size(in, "n_z");
        const auto tag = parse_integer(header_value(in, "frequency_tag"), in.number());
        if (tag < 0 || tag > 0xffffffffLL)
            throw FormatError("frequency_tag out of range", in.number());

        std::optional<ArrayGeometry> geom;
        try
        {
            geom.emplace(nz, nx, dz, dx, double(fc));
        }
        catch (const InvalidArgument &e)
        {
            throw FormatError(std::string("invalid geometry header: ") + e.what(), in.number());
        }

        RealGrid values(nz, nx);
        for (std::size_t m = 0; m < nz; ++m)
        {
            const std::string line = in.require("data row");
            std::size_t n = 0, start = 0;
            while (true)
            {
                const auto comma = line.find(',', start);
                const auto token = std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start);
                if (n >= nx)
                    throw FormatError("row has more than n_x = " + std::to_string(nx) + " values", in.number());
                const double v = parse_double(token, in.number());
                if (v < 0.0)
                    throw FormatError("negative intensity", in.number());
                values(m, n++) = v;
                if (comma == std::string::npos)
                    break;
                start = comma + 1;
            }
            if (n != nx)
                throw FormatError("row has " + std::to_string(n) + " values, expected " + std::to_string(nx), in.number());
        }
        std::string extra;
        while (in.next(extra))
            if (!extra.empty())
                throw FormatError("unexpected content after the last data row", in.number());

        return Hologram{std::move(values), *geom, std::uint32_t(tag), false};
    }

    void save_hologram_csv(const std::filesystem::path &path, const Hologram &holo)
    {
        auto os = open_out(path);
        write_hologram_csv(os, holo);
        check_stream(os, path);
    }

    Hologram load_hologram_csv(const std::filesystem::path &path)
    {
        auto is = open_in(path);
        return read_hologram_csv(is);
    }

    void write_coding(std::ostream &os, const CodingMatrix &coding)
    {
        const auto &s = coding.states;
        os << "# holoris-coding v1\n"
           << "# n_x=" << s.cols() << '\n'
           << "# n_z=" << s.rows() << '\n';
        for (std::size_t m = 0; m < s.rows(); ++m)
        {
            for (std::size_t n = 0; n < s.cols(); ++n)
                os << (s(m, n) ? '1' : '0');
            os << '\n';
        }
    }

    CodingMatrix read_coding(std::istream &is)
    {
        LineReader in(is);
        expect_magic(in, "# holoris-coding v1");
        const std::size_t nx = parse_size(in, "n_x");
        const std::size_t nz = parse_size(in, "n_z");
        CodingMatrix out{Grid<std::uint8_t>(nz, nx)};
        for (std::size_t m = 0; m < nz; ++m)
        {
            const std::string line = in.require("coding row");
            if (line.size() != nx)
                throw FormatError("coding row has " + std::to_string(line.size()) + " states, expected " + std::to_string(nx), in.number());
            for (std::size_t n = 0; n < nx; ++n)
            {
                if (line[n] != '0' && line[n] != '1')
                    throw FormatError("coding states must be '0' or '1'", in.number());
                out.states(m, n) = line[n] == '1';
            }
        }
        std::string extra;
        while (in.next(extra))
            if (!extra.empty())
                throw FormatError("unexpected content after the last coding row", in.number());
        return out;
    }

    void save_coding(const std::filesystem::path &path, const CodingMatrix &coding)
    {
        auto os = open_out(path);
        write_coding(os, coding);
        check_stream(os, path);
    }

    CodingMatrix load_coding(const std::filesystem::path &path)
    {
        auto is = open_in(path);
        return read_coding(is);
    }

    std::string localization_report(const LocalizationResult &r)
    {
        std::ostringstream os;
        os << "candidate_1_theta_deg=" << optional_angle(r.candidate_1, true) << '\n'
           << "candidate_1_phi_deg=" << optional_angle(r.candidate_1, false) << '\n'
           << "candidate_2_theta_deg=" << optional_angle(r.candidate_2, true) << '\n'
           << "candidate_2_phi_deg=" << optional_angle(r.candidate_2, false) << '\n'
           << "chosen_theta_deg=" << optional_angle(r.chosen, true) << '\n'
           << "chosen_phi_deg=" << optional_angle(r.chosen, false) << '\n'
           << "peak_bin_z=" << r.peak_bin.i_z << '\n'
           << "peak_bin_x=" << r.peak_bin.i_x << '\n'
           << "peak_to_median_ratio=" << format_double(r.peak_to_median_ratio) << '\n';
        return os.str();
    }

    void write_pattern_csv(std::ostream &os, const RadiationPattern &pat)
    {
        os << "theta_deg,phi_deg,power_db\n";
        for (std::size_t i = 0; i < pat.grid.theta_deg.size(); ++i)
            for (std::size_t j = 0; j < pat.grid.phi_deg.size(); ++j)
                os << format_double(pat.grid.theta_deg[i]) << ',' << format_double(pat.grid.phi_deg[j]) << ','
                   << format_double(pat.power_db(i, j)) << '\n';
    }

    void write_spectrum_csv(std::ostream &os, const Spectrum &spec)
    {
        const auto &v = spec.values;
        os << "# holoris-spectrum v1\n"
           << "# rows=" << v.rows() << '\n'
           << "# cols=" << v.cols() << '\n'
           << "# zero_pad_factor=" << spec.zero_pad_factor << '\n';
        for (std::size_t k = 0; k < v.rows(); ++k)
        {
            for (std::size_t l = 0; l < v.cols(); ++l)
            {
                if (l)
                    os << ',';
                os << format_double(std::abs(v(k, l)));
            }
            os << '\n';
        }
    }

    namespace
    {
        std::vector<std::string> split_cells(const std::string &line)
        {
            std::vector<std::string> cells;
            std::size_t start = 0;
            while (true)
            {
                const auto comma = line.find(',', start);
                cells.push_back(line.substr(start, comma - start));
                if (comma == std::string::npos)
                    return cells;
                start = comma + 1;
            }
        }

        void write_cells(std::ostream &os, const std::vector<std::string> &cells)
        {
            for (std::size_t i = 0; i < cells.size(); ++i)
                os << (i ? "," : "") << cells[i];
            os << '\n';
        }
    }

    std::size_t CsvTable::column(std::string_view name) const
    {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name)
                return i;
        throw FormatError("missing column '" + std::string(name) + "'", 1);
    }

    double CsvTable::number(std::size_t row, std::size_t col) const
    {
        return parse_double(rows.at(row).at(col), row + 2);
    }

    CsvTable read_csv_table(std::istream &is)
    {
        LineReader reader(is);
        CsvTable table;
        table.header = split_cells(reader.require("header line"));
        std::string line;
        while (reader.next(line))
        {
            auto cells = split_cells(line);
            if (cells.size() != table.header.size())
                throw FormatError("expected " + std::to_string(table.header.size()) + " cells, found " +
                                      std::to_string(cells.size()),
                                  reader.number());
            table.rows.push_back(std::move(cells));
        }
        return table;
    }

    void write_csv_table(std::ostream &os, const CsvTable &table)
    {
        write_cells(os, table.header);
        for (const auto &row : table.rows)
            write_cells(os, row);
    }

    std::string read_file(const std::filesystem::path &path)
    {
        auto is = open_in(path);
        std::ostringstream ss;
        ss << is.rdbuf();
        return ss.str();
    }

    void write_file(const std::filesystem::path &path, std::string_view content)
    {
        auto os = open_out(path);
        os.write(content.data(), std::streamsize(content.size()));
        check_stream(os, path);
    }
}
