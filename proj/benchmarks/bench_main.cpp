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

#include <benchmark/benchmark.h>

#include <holoris/beamforming.hpp>
#include <holoris/localization.hpp>
#include <holoris/wavefield.hpp>

#include <vector>

using namespace holoris;

namespace
{
    Hologram reference_hologram(std::size_t n)
    {
        const ArrayGeometry geom(n, n, 0.02, 0.02, 3.5e9);
        const std::vector<Source> s{Source::far({0.0, 0.0}), Source::far({10.0, 25.0})};
        return synthesize_hologram(s, geom, DetectorModel{}, 0).front();
    }
}

static void BM_Synthesize(benchmark::State &state)
{
    const auto n = std::size_t(state.range(0));
    const ArrayGeometry geom(n, n, 0.02, 0.02, 3.5e9);
    const std::vector<Source> s{Source::far({0.0, 0.0}), Source::far({10.0, 25.0})};
    DetectorModel det;
    det.noise_std = 1.0;
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(synthesize_hologram(s, geom, det, seed++));
}
BENCHMARK(BM_Synthesize)->Arg(32)->Arg(64)->Arg(128);

static void BM_Fft2(benchmark::State &state)
{
    const auto holo = reference_hologram(32);
    for (auto _ : state)
        benchmark::DoNotOptimize(fft2(holo, std::size_t(state.range(0))));
}
BENCHMARK(BM_Fft2)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

static void BM_Localize(benchmark::State &state)
{
    const auto holo = reference_hologram(std::size_t(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(localize(holo, {0.0, 0.0}));
}
BENCHMARK(BM_Localize)->Arg(32)->Arg(64)->Arg(128);

static void BM_MlRefine(benchmark::State &state)
{
    const auto holo = reference_hologram(32);
    for (auto _ : state)
        benchmark::DoNotOptimize(ml_refine(holo, {0.0, 0.0}, {9.0, 27.0}, double(state.range(0)), 0.1));
}
BENCHMARK(BM_MlRefine)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_Pattern(benchmark::State &state)
{
    const auto geom = ArrayGeometry::reference_panel();
    const auto coding = quantize_1bit(farfield_phase_profile({0.0, 0.0}, {0.0, 30.0}, geom));
    const auto grid = AngleGrid::uniform(-80.0, 80.0, -80.0, 80.0, double(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(pattern(coding, Source::far({0.0, 0.0}), geom, grid));
}
BENCHMARK(BM_Pattern)->Arg(4)->Arg(2)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
