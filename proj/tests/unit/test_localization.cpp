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
#include <holoris/localization.hpp>
#include <holoris/wavefield.hpp>

#include <algorithm>
#include <random>

using namespace holoris;
using Catch::Approx;

namespace
{
    const ArrayGeometry panel = ArrayGeometry::reference_panel();

    Hologram two_wave(AngularLocation bs, AngularLocation ue, double a = 1.0, double b = 1.0,
                      const ArrayGeometry &geom = panel)
    {
        return synthesize_hologram(std::vector<Source>{Source::far(bs, a), Source::far(ue, b)}, geom, {}, 0).front();
    }

    Hologram from_values(RealGrid values, const ArrayGeometry &geom = panel)
    {
        return Hologram{std::move(values), geom, 0, false};
    }

    RealGrid on_grid_cosine(std::size_t rows, std::size_t cols, double kz, double kx)
    {
        RealGrid g(rows, cols);
        for (std::size_t m = 0; m < rows; ++m)
            for (std::size_t n = 0; n < cols; ++n)
                g(m, n) = 2.0 + 2.0 * std::cos(2.0 * oracle::pi * (kz * double(m) / double(rows) + kx * double(n) / double(cols)));
        return g;
    }

    double max_abs(const Spectrum &s)
    {
        double best = 0.0;
        for (const auto &v : s.values)
            best = std::max(best, std::abs(v));
        return best;
    }

    oracle::Matrix to_matrix(const RealGrid &g)
    {
        oracle::Matrix m(g.rows(), std::vector<double>(g.cols()));
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j)
                m[i][j] = g(i, j);
        return m;
    }
}

// ================================================================================================
// 2D FFT
// ================================================================================================

TEST_CASE("Localization - fft2 agrees with the DFT definition")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (std::size_t pad : {1u, 2u, 3u})
    {
        RealGrid g(6, 9);
        for (double &v : g)
            v = u(rng);
        const auto s = fft2(g, pad);
        const auto ref = oracle::dft2(to_matrix(g), pad);
        REQUIRE(s.values.rows() == 6 * pad);
        REQUIRE(s.values.cols() == 9 * pad);
        CHECK(s.zero_pad_factor == pad);
        for (std::size_t k = 0; k < ref.size(); ++k)
            for (std::size_t l = 0; l < ref[k].size(); ++l)
                REQUIRE(std::abs(s.values(k, l) - ref[k][l]) < 1e-10);
    }
}

TEST_CASE("Localization - Constant hologram has only a DC bin and no peak")
{
    RealGrid g(32, 32, 1.7);
    const auto s = fft2(g);
    CHECK(s.values(0, 0).real() == Approx(1.7 * 1024.0));
    for (std::size_t i = 1; i < s.values.size(); ++i)
        CHECK(std::abs(s.values.data()[i]) < 1e-9);
    CHECK_THROWS_AS(find_peak(s), NoPeak);
}

TEST_CASE("Localization - On-grid fringe gives exactly three bins")
{
    const auto s = fft2(on_grid_cosine(32, 32, 0.0, 4.0));
    const double peak = max_abs(s);
    std::vector<std::pair<std::size_t, std::size_t>> nonzero;
    for (std::size_t k = 0; k < 32; ++k)
        for (std::size_t l = 0; l < 32; ++l)
            if (std::abs(s.values(k, l)) >= 1e-9 * peak)
                nonzero.emplace_back(k, l);
    REQUIRE(nonzero.size() == 3);
    CHECK(nonzero[0] == std::pair<std::size_t, std::size_t>{0, 0});
    CHECK(nonzero[1] == std::pair<std::size_t, std::size_t>{0, 4});
    CHECK(nonzero[2] == std::pair<std::size_t, std::size_t>{0, 28});

    const auto p = find_peak(s);
    CHECK(p.bin == PeakBin{1, 5});

    const auto sp = spectral_peaks(s);
    CHECK(std::abs(sp.dc_amplitude) == Approx(2048.0));
    CHECK(std::abs(sp.pair_amplitude) == Approx(1024.0));
    CHECK(sp.pair_location.omega_x == Approx(oracle::pi / 4.0));
    CHECK(sp.pair_location.omega_z == 0.0);
    CHECK(std::abs(s.values(0, 4)) == Approx(std::abs(s.values(0, 28))).epsilon(1e-12));
}

TEST_CASE("Localization - Parseval and conjugate symmetry")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::uniform_int_distribution<int> dim(2, 24);
    for (int trial = 0; trial < 50; ++trial)
    {
        const std::size_t R = std::size_t(dim(rng)), C = std::size_t(dim(rng));
        RealGrid g(R, C);
        double energy = 0.0;
        for (double &v : g)
        {
            v = u(rng);
            energy += v * v;
        }
        const auto s = fft2(g);
        double spec_energy = 0.0;
        for (const auto &v : s.values)
            spec_energy += std::norm(v);
        CHECK(spec_energy / double(R * C) == Approx(energy).epsilon(1e-9));
        const double scale = max_abs(s);
        for (std::size_t k = 0; k < R; ++k)
            for (std::size_t l = 0; l < C; ++l)
                REQUIRE(std::abs(s.values(k, l) - std::conj(s.values((R - k) % R, (C - l) % C))) <= 1e-9 * scale);
    }
}

// ================================================================================================
// Peak search
// ================================================================================================

TEST_CASE("Localization - Straddled peak resolves to the lexicographically smaller bin")
{
    // Two equal on-bin fringes at columns 4 and 5 tie to rounding.
    RealGrid g(16, 32);
    for (std::size_t m = 0; m < 16; ++m)
        for (std::size_t n = 0; n < 32; ++n)
            g(m, n) = 2.0 + std::cos(2.0 * oracle::pi * 4.0 * double(n) / 32.0) +
                      std::cos(2.0 * oracle::pi * 5.0 * double(n) / 32.0 + 0.7);
    const auto s = fft2(g);
    CHECK(std::abs(s.values(0, 4)) == Approx(std::abs(s.values(0, 5))).epsilon(1e-9));
    const auto first = find_peak(s);
    CHECK(first.bin == PeakBin{1, 5});
    for (int i = 0; i < 5; ++i)
        CHECK(find_peak(fft2(g)).bin == first.bin);
}

TEST_CASE("Localization - Half-spectrum restriction")
{
    // A vertical fringe at k = 29 (equivalently -3): the reported bin is the conjugate k = 3.
    const auto s = fft2(on_grid_cosine(32, 32, 29.0, 30.0));
    const auto p = find_peak(s);
    CHECK(p.bin.i_z == 4);
    CHECK(p.bin.i_x == 3);
}

TEST_CASE("Localization - DC guard and significance threshold")
{
    auto g = on_grid_cosine(32, 32, 0.0, 1.0);
    PeakSearchOptions opts;
    opts.dc_guard = 1;
    // The only fringe sits inside the guard, so only numerical residue is left.
    CHECK_THROWS_AS(find_peak(fft2(g), opts), NoPeak);
    opts.dc_guard = 16;
    CHECK_THROWS_AS(find_peak(fft2(g), opts), InvalidArgument);

    std::mt19937_64 rng(4);
    std::normal_distribution<double> n(0.0, 1.0);
    RealGrid noise(32, 32);
    for (double &v : noise)
        v = 5.0 + n(rng);
    PeakSearchOptions strict;
    strict.significance = 50.0;
    CHECK_THROWS_AS(find_peak(fft2(noise), strict), NoPeak);
    strict.significance = 0.0;
    CHECK_NOTHROW(find_peak(fft2(noise), strict));
}

// ================================================================================================
// regulate and candidate frequencies
// ================================================================================================

TEST_CASE("Localization - regulate values")
{
    CHECK(regulate(0.0) == 0.0);
    CHECK(regulate(7.0) == Approx(0.71681).margin(5e-6));
    CHECK(regulate(1.5 * oracle::pi) == Approx(-0.5 * oracle::pi));
    CHECK(regulate(-1.5 * oracle::pi) == Approx(0.5 * oracle::pi));
    // round-half-away-from-zero: x / 2pi = 0.5 maps to x - 2pi
    CHECK(regulate(oracle::pi) == Approx(-oracle::pi));
    CHECK(regulate(-oracle::pi) == Approx(oracle::pi));
}

TEST_CASE("Localization - regulate range and congruence")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1000.0, 1000.0);
    for (int i = 0; i < 1000; ++i)
    {
        const double x = u(rng);
        const double r = regulate(x);
        REQUIRE(std::abs(r) <= oracle::pi + 1e-12);
        const double turns = (x - r) / (2.0 * oracle::pi);
        REQUIRE(std::abs(turns - std::round(turns)) < 1e-9);
    }
}

TEST_CASE("Localization - Candidate set is invariant under the conjugate peak")
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i)
    {
        const SpatialFrequencyPair bs{u(rng), u(rng)}, pk{u(rng), u(rng)};
        const auto a = twin_frequencies(bs, pk);
        const auto b = twin_frequencies(bs, {-pk.omega_z, -pk.omega_x});
        auto same = [](SpatialFrequencyPair x, SpatialFrequencyPair y) {
            return std::abs(regulate(x.omega_z - y.omega_z)) < 1e-12 && std::abs(regulate(x.omega_x - y.omega_x)) < 1e-12;
        };
        REQUIRE(same(a[0], b[1]));
        REQUIRE(same(a[1], b[0]));
    }
}

TEST_CASE("Localization - Bin frequencies")
{
    const auto f = bin_frequencies({1, 5}, 32, 32);
    CHECK(f.omega_z == 0.0);
    CHECK(f.omega_x == Approx(oracle::pi / 4.0));
    const auto g = bin_frequencies({3, 9}, 64, 256);
    CHECK(g.omega_z == Approx(2.0 * oracle::pi * 2.0 / 64.0));
    CHECK(g.omega_x == Approx(2.0 * oracle::pi * 8.0 / 256.0));
}

// ================================================================================================
// localize
// ================================================================================================

TEST_CASE("Localization - Broadside BS with a 30 degree azimuth user")
{
    const auto holo = two_wave({0.0, 0.0}, {0.0, 30.0});
    const auto r = localize(holo, {0.0, 0.0});
    CHECK(r.peak_bin == PeakBin{1, 5});
    CHECK(r.peak_frequencies.omega_x == Approx(oracle::pi / 4.0));
    REQUIRE(r.candidate_1);
    REQUIRE(r.candidate_2);
    CHECK_FALSE(r.chosen);
    CHECK(r.candidate_1->theta_deg == Approx(0.0).margin(1e-12));
    CHECK(r.candidate_1->phi_deg == Approx(32.36).margin(0.01));
    CHECK(r.candidate_2->phi_deg == Approx(-32.36).margin(0.01));
    CHECK(angular_error_deg(*r.candidate_1, {0.0, 30.0}) == Approx(2.36).margin(0.01));
    CHECK(angular_error_deg(*r.candidate_1, {0.0, 30.0}) < 3.98);

    // Full-pipeline brute-force oracle.
    const oracle::Panel p;
    const auto c = oracle::brute_force_localize(p, oracle::two_wave_hologram(p, 0.0, 0.0, 0.0, 30.0), 0.0, 0.0);
    CHECK(c.k == 0);
    CHECK(c.l == 4);
    CHECK(c.phi[0] == Approx(r.candidate_1->phi_deg).margin(1e-9));
    CHECK(c.phi[1] == Approx(r.candidate_2->phi_deg).margin(1e-9));
}

TEST_CASE("Localization - Matches the brute-force pipeline on random placements")
{
    const oracle::Panel p;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ang(-60.0, 60.0);
    int compared = 0;
    while (compared < 25)
    {
        const double bt = ang(rng) / 3.0, bf = ang(rng), ut = ang(rng) / 2.0, uf = ang(rng);
        const auto c = oracle::brute_force_localize(p, oracle::two_wave_hologram(p, bt, bf, ut, uf), bt, bf);
        if (!c.ok[0] && !c.ok[1])
            continue;
        const auto r = localize(two_wave({bt, bf}, {ut, uf}), {bt, bf});
        CHECK(r.peak_bin == PeakBin{c.k + 1, c.l + 1});
        for (int s = 0; s < 2; ++s)
        {
            const auto &cand = s == 0 ? r.candidate_1 : r.candidate_2;
            REQUIRE(bool(cand) == c.ok[s]);
            if (cand)
            {
                CHECK(cand->theta_deg == Approx(c.theta[s]).margin(1e-9));
                CHECK(cand->phi_deg == Approx(c.phi[s]).margin(1e-9));
            }
        }
        ++compared;
    }
}

TEST_CASE("Localization - Co-located sources raise NoPeak")
{
    CHECK_THROWS_AS(localize(two_wave({0.0, 0.0}, {0.0, 0.0}), {0.0, 0.0}), NoPeak);
    CHECK_THROWS_AS(localize(two_wave({10.0, -20.0}, {10.0, -20.0}, 1.0, 0.3), {10.0, -20.0}), NoPeak);
}

TEST_CASE("Localization - Zero padding by 8 brings the estimate within half a degree")
{
    LocalizeOptions opts;
    opts.zero_pad_factor = 8;
    const auto r = localize(two_wave({0.0, 0.0}, {0.0, 30.0}), {0.0, 0.0}, opts, OracleDisambiguation{{0.0, 30.0}});
    REQUIRE(r.chosen);
    CHECK(std::abs(r.chosen->phi_deg - 30.0) < 0.5);
}

TEST_CASE("Localization - Worst-case error does not grow with padding")
{
    std::vector<std::pair<AngularLocation, AngularLocation>> cases;
    for (double uf : {7.0, 19.0, 33.0, 41.0, -52.0})
        for (double ut : {-11.0, 4.0, 13.0})
            cases.push_back({{0.0, -5.0}, {ut, uf}});
    double previous = 1e9;
    for (std::size_t pad : {1u, 2u, 4u, 8u})
    {
        LocalizeOptions opts;
        opts.zero_pad_factor = pad;
        double worst = 0.0;
        for (const auto &[bs, ue] : cases)
        {
            const auto r = localize(two_wave(bs, ue), bs, opts, OracleDisambiguation{ue});
            worst = std::max(worst, angular_error_deg(*r.chosen, ue));
        }
        CHECK(worst <= previous + 1e-12);
        previous = worst;
    }
    CHECK(previous < 1.0);
}

TEST_CASE("Localization - Source amplitude scaling leaves the peak bin unchanged")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ang(-50.0, 50.0), lg(std::log(0.1), std::log(10.0));
    for (int i = 0; i < 30; ++i)
    {
        const AngularLocation bs{ang(rng) / 3.0, ang(rng)}, ue{ang(rng) / 2.0, ang(rng)};
        const auto ref = localize(two_wave(bs, ue), bs);
        const double g = std::exp(lg(rng));
        const auto a = localize(two_wave(bs, ue, g, 1.0), bs);
        const auto b = localize(two_wave(bs, ue, 1.0, g), bs);
        CHECK(a.peak_bin == ref.peak_bin);
        CHECK(b.peak_bin == ref.peak_bin);
        CHECK(a.candidate_1 == ref.candidate_1);
        CHECK(b.candidate_2 == ref.candidate_2);
    }
}

TEST_CASE("Localization - Evanescent twins are discarded")
{
    const oracle::Panel p;
    bool found = false;
    for (double bf = 50.0; bf <= 85.0 && !found; bf += 1.0)
        for (double uf = -85.0; uf <= -40.0 && !found; uf += 1.0)
        {
            const auto c = oracle::brute_force_localize(p, oracle::two_wave_hologram(p, 0.0, bf, 0.0, uf), 0.0, bf);
            if (!c.ok[0] && !c.ok[1])
            {
                found = true;
                CHECK_THROWS_AS(localize(two_wave({0.0, bf}, {0.0, uf}), {0.0, bf}), AllCandidatesInfeasible);
            }
        }
    REQUIRE(found);

    // One twin evanescent, the other kept.
    const auto r = localize(two_wave({0.0, 60.0}, {0.0, 10.0}), {0.0, 60.0});
    CHECK(bool(r.candidate_1) != bool(r.candidate_2));
}

// ================================================================================================
// Disambiguation
// ================================================================================================

TEST_CASE("Localization - Disambiguation policies")
{
    const auto holo = two_wave({0.0, 0.0}, {0.0, 30.0});
    const auto none = localize(holo, {0.0, 0.0});

    SectorDisambiguation right;
    right.phi_min = 0.0;
    right.phi_max = 90.0;
    const auto s = disambiguate(none, right);
    REQUIRE(s.chosen);
    CHECK(s.chosen->phi_deg == Approx(32.36).margin(0.01));
    CHECK(*s.chosen == *s.candidate_1);

    CHECK_THROWS_AS(disambiguate(none, SectorDisambiguation{}), SectorAmbiguous);
    SectorDisambiguation narrow;
    narrow.phi_min = 50.0;
    CHECK_THROWS_AS(disambiguate(none, narrow), SectorEmpty);

    const auto o = disambiguate(none, OracleDisambiguation{{0.0, 30.0}});
    CHECK(o.chosen->phi_deg == Approx(32.36).margin(0.01));
    const auto o2 = disambiguate(none, OracleDisambiguation{{0.0, -28.0}});
    CHECK(o2.chosen->phi_deg == Approx(-32.36).margin(0.01));

    CHECK_FALSE(disambiguate(o, NoDisambiguation{}).chosen);
}

// ================================================================================================
// ML refinement
// ================================================================================================

TEST_CASE("Localization - ML refinement recovers on-model truth")
{
    const AngularLocation bs{0.0, 0.0}, ue{0.0, 30.0};
    const auto holo = two_wave(bs, ue);
    const auto r = localize(holo, bs, {}, OracleDisambiguation{ue});
    const auto refined = ml_refine(holo, bs, *r.chosen, 3.0, 0.1);
    const double fft_err = angular_error_deg(*r.chosen, ue);
    const double ml_err = angular_error_deg(refined, ue);
    CHECK(ml_err <= 0.1);
    CHECK(ml_err < fft_err);

    // Truth exactly on the search grid: recovered to within half a step.
    const auto exact = ml_refine(holo, bs, {0.0, 29.0}, 2.0, 0.25);
    CHECK(std::abs(exact.phi_deg - 30.0) <= 0.125);
    CHECK(std::abs(exact.theta_deg) <= 0.125);
}

TEST_CASE("Localization - ML refinement on pure noise still returns a grid point")
{
    std::mt19937_64 rng(10);
    std::normal_distribution<double> n(0.0, 1.0);
    RealGrid g(32, 32);
    for (double &v : g)
        v = std::abs(3.0 + n(rng));
    const auto out = ml_refine(from_values(g), {0.0, 0.0}, {5.0, 10.0}, 1.0, 0.5);
    CHECK(std::abs(out.theta_deg - 5.0) <= 1.0 + 1e-9);
    CHECK(std::abs(out.phi_deg - 10.0) <= 1.0 + 1e-9);
    const double kt = (out.theta_deg - 5.0) / 0.5, kp = (out.phi_deg - 10.0) / 0.5;
    CHECK(std::abs(kt - std::round(kt)) < 1e-9);
    CHECK(std::abs(kp - std::round(kp)) < 1e-9);
}

// ================================================================================================
// Multi-user
// ================================================================================================

TEST_CASE("Localization - Multi-user dispatch")
{
    const AngularLocation bs{0.0, 0.0};
    SECTION("K = 1 matches localize")
    {
        const auto holos = synthesize_hologram(std::vector<Source>{Source::far(bs), Source::far({5.0, 20.0})}, panel, {}, 0);
        const auto out = multiuser_localize(holos, bs);
        REQUIRE(out.size() == 1);
        const auto single = localize(holos.front(), bs);
        CHECK(out.at(0).error.empty());
        CHECK(out.at(0).result->candidate_1 == single.candidate_1);
        CHECK(out.at(0).result->candidate_2 == single.candidate_2);
    }
    SECTION("K = 4 with one degenerate tag")
    {
        const std::vector<AngularLocation> users{{0.0, 30.0}, {-15.0, -45.0}, {0.0, 0.0}, {15.0, 15.0}};
        std::vector<Source> src;
        for (std::uint32_t k = 0; k < users.size(); ++k)
        {
            src.push_back(Source::far(bs, 1.0, 0.0, k + 1));
            src.push_back(Source::far(users[k], 1.0, 0.0, k + 1));
        }
        const auto holos = synthesize_hologram(src, panel, {}, 0);
        const auto out = multiuser_localize(holos, bs);
        REQUIRE(out.size() == 4);
        for (std::uint32_t k = 0; k < users.size(); ++k)
        {
            const auto &o = out.at(k + 1);
            if (k == 2)
            {
                CHECK_FALSE(o.result);
                CHECK_FALSE(o.error.empty());
                continue;
            }
            REQUIRE(o.result);
            const auto picked = disambiguate(*o.result, OracleDisambiguation{users[k]});
            CHECK(angular_error_deg(*picked.chosen, users[k]) < 6.0);
        }
    }
    SECTION("Duplicate tags are rejected")
    {
        const auto h = two_wave(bs, {0.0, 20.0});
        const std::vector<Hologram> dup{h, h};
        CHECK_THROWS_AS(multiuser_localize(dup, bs), InvalidArgument);
    }
}
