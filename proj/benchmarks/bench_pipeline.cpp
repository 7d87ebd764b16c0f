// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "radresp/audio_dsp.hpp"
#include "radresp/ingest.hpp"
#include "radresp/pipeline.hpp"
#include "radresp/radar_dsp.hpp"
#include "radresp/simulator.hpp"
#include "radresp/spectral.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

using namespace radresp;

namespace {

sim::SceneSpec bench_scene()
{
    auto scene = sim::default_scene();
    scene.targets[0].motion.resp_amplitude_m = 0.001;
    scene.seed = 1;
    return scene;
}

const RadarCube& cube_6min()
{
    static const RadarCube cube = sim::synth_cube(bench_scene(), RadarConfig{}, 360.0);
    return cube;
}

void BM_SynthCube(benchmark::State& state)
{
    const double seconds = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim::synth_cube(bench_scene(), RadarConfig{}, seconds));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(seconds * 20.0));
}
BENCHMARK(BM_SynthCube)->Arg(60)->Arg(360)->Unit(benchmark::kMillisecond);

void BM_RangeFft(benchmark::State& state)
{
    const auto& cube = cube_6min();
    for (auto _ : state) {
        benchmark::DoNotOptimize(radar::range_fft(cube));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cube.frames));
}
BENCHMARK(BM_RangeFft)->Unit(benchmark::kMillisecond);

void BM_Stft(benchmark::State& state)
{
    std::vector<double> trace(static_cast<std::size_t>(state.range(0)) * 20);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    for (double& v : trace) v = g(rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral::stft(trace));
    }
}
BENCHMARK(BM_Stft)->Arg(120)->Arg(360)->Unit(benchmark::kMillisecond);

void BM_ProcessRadar(benchmark::State& state)
{
    const auto& cube = cube_6min();
    for (auto _ : state) {
        benchmark::DoNotOptimize(process_radar(cube));
    }
}
BENCHMARK(BM_ProcessRadar)->Unit(benchmark::kMillisecond);

void BM_Reassemble(benchmark::State& state)
{
    auto datagrams = sim::datagram_stream(cube_6min());
    std::mt19937_64 rng(3);
    std::shuffle(datagrams.begin(), datagrams.end(), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ingest::reassemble(datagrams));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(datagrams.size()));
}
BENCHMARK(BM_Reassemble)->Unit(benchmark::kMillisecond);

void BM_Decimate(benchmark::State& state)
{
    const auto trace = sim::synth_audio(sim::BreathAudioSpec{}, 60.0);
    const auto kind = state.range(0) == 0 ? audio::Decimator::AntiAliasFir : audio::Decimator::Multistage;
    for (auto _ : state) {
        benchmark::DoNotOptimize(audio::decimate_to_frame_rate(trace, kind));
    }
}
BENCHMARK(BM_Decimate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
