// SPDX-License-Identifier: Apache-2.0
//
// arraymetrics: physical-layer authentication with chaotic antenna arrays
// Copyright (C) 2026 The arraymetrics authors
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

#include "arraymetrics/channel.hpp"
#include "arraymetrics/detector.hpp"
#include "arraymetrics/montecarlo.hpp"
#include "arraymetrics/random.hpp"

using namespace arraymetrics;

static void BM_ChannelFactors(benchmark::State &state)
{
    const TransmitArray tx = TransmitArray::perturbed(ArrayShape::near_square(state.range(0)), ChaoticNoise::draw(state.range(0), 1));
    ChannelConfig cc;
    const PilotMatrix x = generate_pilot_matrix({static_cast<std::size_t>(state.range(0)), default_t_bauds, 0.0, 2});
    std::uint64_t i = 0;
    for (auto _ : state)
    {
        cc.seed = derive_seed(3, streams::paths, i++);
        benchmark::DoNotOptimize(apply_channel(channel_factors(draw_paths(cc, x.values.rows()), cc, tx), x.values));
    }
}
BENCHMARK(BM_ChannelFactors)->Arg(16)->Arg(128);

static void BM_DenseChannel(benchmark::State &state)
{
    const TransmitArray tx = TransmitArray::perturbed(ArrayShape::near_square(state.range(0)), ChaoticNoise::draw(state.range(0), 1));
    ChannelConfig cc;
    std::uint64_t i = 0;
    for (auto _ : state)
    {
        cc.seed = derive_seed(3, streams::paths, i++);
        benchmark::DoNotOptimize(generate_scattering_channel(cc, tx));
    }
}
BENCHMARK(BM_DenseChannel)->Arg(16)->Arg(128);

static void BM_NoiseProbeSetup(benchmark::State &state)
{
    Engine e(1);
    std::vector<CMatrix> signals;
    for (int k = 0; k < state.range(0); ++k)
        signals.push_back(complex_normal_matrix(e, 512, 2));
    for (auto _ : state)
        benchmark::DoNotOptimize(NoiseProbes(signals, 512, 2, 256));
}
BENCHMARK(BM_NoiseProbeSetup)->Arg(1)->Arg(16);

static void BM_Detect(benchmark::State &state)
{
    Engine e(1);
    const CMatrix hx = complex_normal_matrix(e, 512, 2);
    const std::vector<CMatrix> s{hx};
    const NoiseProbes probes(s, 512, 2, 256);
    ReceivedFrame y;
    y.samples = hx + complex_normal_matrix(e, 512, 2, 0.1);
    const DetectorConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(detect(hx, probes, y, cfg));
}
BENCHMARK(BM_Detect);

static void BM_UnitNoise(benchmark::State &state)
{
    std::uint64_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(draw_unit_noise(512, 2, i++));
}
BENCHMARK(BM_UnitNoise);

static void BM_MissTrial(benchmark::State &state)
{
    ExperimentConfig cfg;
    cfg.snr_grid_db = default_snr_grid();
    const Experiment exp(cfg);
    std::uint64_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(exp.trial_events(i++));
}
BENCHMARK(BM_MissTrial);
BENCHMARK_MAIN();
