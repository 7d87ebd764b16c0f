// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "error_code.hpp"
#include "oracles.hpp"

#include "radresp/pipeline.hpp"
#include "radresp/radar_dsp.hpp"
#include "radresp/simulator.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace radresp;
using namespace radresp::radar;

namespace {

sim::SceneSpec single_target(double range_m, double amplitude_m, std::optional<double> snr_db, std::uint64_t seed = 1)
{
    sim::SceneSpec scene;
    sim::Target t;
    t.motion.base_range_m = range_m;
    t.motion.resp_amplitude_m = amplitude_m;
    scene.targets.push_back(t);
    scene.snr_db = snr_db;
    scene.seed = seed;
    return scene;
}

std::size_t argmax_bin(const RangeTimeMap& map, std::size_t frame)
{
    std::size_t best = 0;
    for (std::size_t k = 1; k < map.bins; ++k) {
        if (std::abs(map.at(frame, k)) > std::abs(map.at(frame, best))) best = k;
    }
    return best;
}

PhaseTrace phase_chain(const RadarCube& cube, ClutterMethod clutter)
{
    const auto map = range_fft(cube);
    const auto bin = select_target_bin(map);
    return extract_unwrapped_phase(clutter_remove(slow_time_series(map, bin), clutter));
}

std::vector<double> truth_phase(const sim::MotionSpec& motion, const RadarCube& cube)
{
    std::vector<double> out;
    for (double t : cube.frame_timestamps) {
        out.push_back(oracle::phase_of_displacement(sim::chest_displacement(motion, t), oracle::kWavelength77GHz));
    }
    return out;
}

std::vector<double> demean(std::vector<double> v)
{
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    for (double& x : v) x -= m;
    return v;
}

RangeTimeMap map_from_power(const std::vector<double>& power, std::size_t frames = 3)
{
    RangeTimeMap map;
    map.frames = frames;
    map.bins = power.size();
    map.bin_spacing_m = oracle::kBinSpacingDefault;
    map.frame_rate_hz = 20.0;
    map.frame_times_s.resize(frames);
    for (std::size_t f = 0; f < frames; ++f) {
        map.frame_times_s[f] = static_cast<double>(f) / 20.0;
        for (double p : power) map.values.emplace_back(std::sqrt(p), 0.0);
    }
    return map;
}

} // namespace

TEST(RadarConfig, DefaultGeometry)
{
    const RadarConfig cfg;
    EXPECT_DOUBLE_EQ(cfg.bandwidth_hz(), 3.072e9);
    EXPECT_DOUBLE_EQ(cfg.bin_spacing_m(), oracle::kBinSpacingDefault);
    EXPECT_DOUBLE_EQ(cfg.wavelength_m(), oracle::kWavelength77GHz);
    EXPECT_GE(cfg.wavelength_m(), 3.8e-3);
    EXPECT_LE(cfg.wavelength_m(), 4.0e-3);
}

TEST(RadarConfig, FrameMustFitPeriod)
{
    RadarConfig cfg;
    cfg.chirps_per_frame = 2000; // 2000 x 51.2 us > 50 ms
    EXPECT_EQ(code_of([&] { validate(cfg); }), ErrorCode::InvalidConfig);
    cfg = RadarConfig{};
    cfg.adc_rate_hz = 0.0;
    EXPECT_EQ(code_of([&] { validate(cfg); }), ErrorCode::InvalidConfig);
}

TEST(RangeFft, AllZeroCube)
{
    const RadarCube cube(RadarConfig{}, 4);
    const auto map = range_fft(cube);
    EXPECT_EQ(map.frames, 4u);
    EXPECT_EQ(map.bins, 256u);
    for (const auto& v : map.values) EXPECT_EQ(v, std::complex<double>(0, 0));
}

TEST(RangeFft, EmptyCubeThrows)
{
    EXPECT_EQ(code_of([] { range_fft(RadarCube(RadarConfig{}, 0)); }), ErrorCode::EmptyCube);
}

TEST(RangeFft, MatchesDirectDft)
{
    RadarConfig cfg;
    cfg.samples_per_chirp = 32;
    cfg.chirps_per_frame = 3;
    RadarCube cube(cfg, 2);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    for (auto& z : cube.data) z = {g(rng), g(rng)};

    const auto map = range_fft(cube);
    const auto w = oracle::hann(32);
    double sum_w = 0.0;
    for (double x : w) sum_w += x;
    const double centre = 15.5;
    for (std::size_t f = 0; f < 2; ++f) {
        std::vector<std::complex<double>> avg(32);
        for (std::size_t c = 0; c < 3; ++c)
            for (std::size_t n = 0; n < 32; ++n) avg[n] += cube.at(f, c, n) / 3.0;
        for (std::size_t k = 0; k < 32; ++k) {
            std::vector<std::complex<double>> xw(32);
            for (std::size_t n = 0; n < 32; ++n) xw[n] = avg[n] * w[n];
            const auto ref = oracle::dft_bin(xw, static_cast<double>(k)) *
                             std::polar(1.0 / sum_w, 2.0 * oracle::kPi * static_cast<double>(k) * centre / 32.0);
            EXPECT_NEAR(std::abs(map.at(f, k) - ref), 0.0, 1e-12);
        }
    }
}

TEST(RangeFft, StaticTargetLandsInBinTen)
{
    const auto cube = sim::synth_cube(single_target(0.50, 0.0, std::nullopt), RadarConfig{}, 2.0);
    const auto map = range_fft(cube);
    EXPECT_EQ(static_cast<std::size_t>(std::lround(0.50 / oracle::kBinSpacingDefault)), 10u);
    for (std::size_t f = 0; f < map.frames; ++f) EXPECT_EQ(argmax_bin(map, f), 10u);
}

TEST(RangeFft, StaticTargetPhaseMatchesClosedForm)
{
    // A reflector exactly on a bin centre reads 4 pi R / lambda in that bin.
    const double range = 10.0 * oracle::kBinSpacingDefault;
    sim::SceneSpec scene;
    scene.static_reflectors.push_back({range, 1.0});
    const auto map = range_fft(sim::synth_cube(scene, RadarConfig{}, 1.0));
    const double expected = std::remainder(oracle::phase_of_displacement(range, oracle::kWavelength77GHz), 2 * oracle::kPi);
    for (std::size_t f = 0; f < map.frames; ++f) {
        EXPECT_NEAR(std::remainder(std::arg(map.at(f, 10)) - expected, 2 * oracle::kPi), 0.0, 1e-3);
        EXPECT_NEAR(std::abs(map.at(f, 10)), sim::kStrongestScattererCounts, 1.0);
    }
}

TEST(RangeFft, TwoEqualReflectorsGiveTwoPeaks)
{
    sim::SceneSpec scene;
    scene.static_reflectors = {{0.5, 1.0}, {3.0, 1.0}};
    const auto map = range_fft(sim::synth_cube(scene, RadarConfig{}, 1.0));
    const auto power = mean_bin_power(map);
    for (double r : {0.5, 3.0}) {
        const auto k = static_cast<std::size_t>(std::lround(r / oracle::kBinSpacingDefault));
        EXPECT_GT(power[k], power[k - 1]);
        EXPECT_GT(power[k], power[k + 1]);
    }
}

TEST(StaticProfile, ConstantMapHasZeroCov)
{
    const auto profile = static_profile(map_from_power({1.0, 4.0, 9.0}, 5));
    for (double c : profile.cov) EXPECT_EQ(c, 0.0);
    EXPECT_NEAR(profile.mean_power_db[1], 10.0 * std::log10(4.0), 1e-12);
}

TEST(StaticProfile, OneFrameIsTooFew)
{
    EXPECT_EQ(code_of([] { static_profile(map_from_power({1.0}, 1)); }), ErrorCode::TooFewFrames);
}

TEST(StaticProfile, NoisyStaticSceneIsStationary)
{
    const auto cube = sim::synth_cube(single_target(0.50, 0.0, 20.0, 3), RadarConfig{}, 60.0);
    const auto profile = static_profile(range_fft(cube));
    EXPECT_LT(profile.cov[10], 0.15);
    EXPECT_GE(*std::min_element(profile.cov.begin(), profile.cov.end()), 0.0);
}

TEST(StaticProfile, BreathingRaisesCov)
{
    // Paired runs: same seed, same wall return in the target bin, motion on/off.
    auto scene = single_target(0.50, 0.0, 20.0, 3);
    scene.static_reflectors.push_back({0.51, 0.5});
    const auto still = static_profile(range_fft(sim::synth_cube(scene, RadarConfig{}, 60.0)));
    scene.targets[0].motion.resp_amplitude_m = 0.005;
    const auto moving = static_profile(range_fft(sim::synth_cube(scene, RadarConfig{}, 60.0)));
    EXPECT_GT(moving.cov[10], still.cov[10]);
}

TEST(SelectTargetBin, SingleTarget)
{
    const auto map = range_fft(sim::synth_cube(single_target(0.50, 0.001, 30.0), RadarConfig{}, 5.0));
    EXPECT_EQ(select_target_bin(map), 10u);
}

TEST(SelectTargetBin, StrongerReflectorOutsideWindowIsIgnored)
{
    auto scene = single_target(0.50, 0.001, 30.0);
    scene.static_reflectors.push_back({3.0, 4.0});
    const auto map = range_fft(sim::synth_cube(scene, RadarConfig{}, 5.0));
    const auto power = mean_bin_power(map);
    EXPECT_GT(power[61], power[10]);
    EXPECT_EQ(select_target_bin(map), 10u);
}

TEST(SelectTargetBin, EmptyWindow)
{
    const auto map = map_from_power(std::vector<double>(256, 1.0));
    EXPECT_EQ(code_of([&] { select_target_bin(map, 0.10, 0.12); }), ErrorCode::WindowEmpty);
}

TEST(SelectTargetBin, TiesGoToSmallerBin)
{
    std::vector<double> power(20, 1.0);
    power[4] = 5.0;
    power[7] = 5.0;
    EXPECT_EQ(select_target_bin(map_from_power(power)), 4u);
    EXPECT_EQ(select_target_bin(map_from_power(std::vector<double>(20, 2.0))), 3u);
}

TEST(SelectTargetBinProperty, PositiveScalingInvariance)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> p(0.0, 1.0);
    std::uniform_real_distribution<double> scale(1e-6, 1e6);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> power(64);
        for (double& v : power) v = p(rng);
        auto map = map_from_power(power);
        const auto before = select_target_bin(map);
        const double s = scale(rng);
        for (auto& v : map.values) v *= s;
        ASSERT_EQ(select_target_bin(map), before);
    }
}

TEST(SelectTargetBinProperty, RangeAxisCalibration)
{
    for (double r = 0.15; r <= 0.75 + 1e-9; r += 0.0125) {
        const auto map = range_fft(sim::synth_cube(single_target(r, 0.0, 30.0), RadarConfig{}, 1.0));
        const auto k = select_target_bin(map);
        EXPECT_LE(std::abs(static_cast<double>(k) * oracle::kBinSpacingDefault - r), oracle::kBinSpacingDefault / 2.0)
            << "range " << r;
    }
}

TEST(ClutterRemove, ConstantBecomesZero)
{
    SlowTimeSeries s;
    s.samples.assign(50, {3.0, -2.0});
    for (const auto& z : clutter_remove(s).samples) EXPECT_EQ(z, std::complex<double>(0, 0));
}

TEST(ClutterRemove, WholePeriodPhasorUnchanged)
{
    SlowTimeSeries s;
    for (int n = 0; n < 400; ++n) s.samples.push_back(std::polar(1.0, 2.0 * oracle::kPi * n / 40.0));
    const auto out = clutter_remove(s);
    for (std::size_t i = 0; i < s.samples.size(); ++i) EXPECT_LT(std::abs(out.samples[i] - s.samples[i]), 1e-10);
}

TEST(ClutterRemove, WallLeakageBiasesPhaseUntilRemoved)
{
    auto scene = single_target(0.50, 0.001, 30.0, 4);
    scene.static_reflectors.push_back({0.51, 3.0});
    const auto cube = sim::synth_cube(scene, RadarConfig{}, 120.0);
    const auto truth = demean(truth_phase(scene.targets[0].motion, cube));

    const auto raw = demean(phase_chain(cube, ClutterMethod::None).samples);
    EXPECT_LT(oracle::rms(raw), 0.5 * oracle::rms(truth));

    const auto cleaned = demean(phase_chain(cube, ClutterMethod::ArcCenter).samples);
    EXPECT_LT(oracle::rms_diff(cleaned, truth), 0.02 * oracle::rms(truth));

    RadarOptions opts;
    opts.clutter = ClutterMethod::Mean;
    const auto rates = process_radar(cube, opts).rates;
    EXPECT_EQ(spectral::fraction_within(rates, 15.0, 1.0), 1.0);
}

TEST(ArcCenter, RecoversCircleCentreFromQuarterArc)
{
    const std::complex<double> c(5.0, -2.0);
    std::vector<std::complex<double>> pts;
    for (int i = 0; i <= 90; ++i) pts.push_back(c + std::polar(0.7, oracle::kPi * i / 180.0));
    EXPECT_LT(std::abs(estimate_arc_center(pts) - c), 1e-9);
}

TEST(ArcCenter, DegenerateInputFallsBackToMean)
{
    const std::vector<std::complex<double>> pts(10, {1.0, 2.0});
    EXPECT_LT(std::abs(estimate_arc_center(pts) - std::complex<double>(1.0, 2.0)), 1e-12);
}

TEST(ExtractPhase, RampUnwraps)
{
    SlowTimeSeries s;
    std::vector<double> theta;
    for (double t = 0.0; t <= 4.0 * oracle::kPi + 1e-12; t += 0.1) {
        theta.push_back(t);
        s.samples.push_back(std::polar(1.0, t));
    }
    const auto p = extract_unwrapped_phase(s);
    ASSERT_EQ(p.samples.size(), theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) EXPECT_NEAR(p.samples[i], theta[i], 1e-9);
    for (std::size_t i = 1; i < theta.size(); ++i) EXPECT_GT(p.samples[i], p.samples[i - 1]);
}

TEST(ExtractPhase, ConstantIsZeroPhase)
{
    SlowTimeSeries s;
    s.samples.assign(20, {1.0, 0.0});
    for (double v : extract_unwrapped_phase(s).samples) EXPECT_EQ(v, 0.0);
}

TEST(ExtractPhase, ZeroMagnitudeErrors)
{
    SlowTimeSeries zeros;
    zeros.samples.assign(8, {0.0, 0.0});
    EXPECT_EQ(code_of([&] { extract_unwrapped_phase(zeros); }), ErrorCode::AllZero);
    SlowTimeSeries hole;
    hole.samples.assign(8, {1.0, 1.0});
    hole.samples[3] = 0.0;
    EXPECT_EQ(code_of([&] { extract_unwrapped_phase(hole); }), ErrorCode::ZeroMagnitudeSample);
}

TEST(ExtractPhase, SimulatedChestMotionMatchesClosedForm)
{
    const auto scene = single_target(0.50, 0.001, 30.0, 5);
    const auto cube = sim::synth_cube(scene, RadarConfig{}, 120.0);
    const auto phase = phase_chain(cube, ClutterMethod::ArcCenter);
    EXPECT_EQ(phase.source_bin, 10u);
    EXPECT_EQ(phase.samples.size(), cube.frames);
    for (std::size_t i = 1; i < phase.samples.size(); ++i) {
        ASSERT_LT(std::abs(phase.samples[i] - phase.samples[i - 1]), oracle::kPi);
    }
    const auto got = demean(phase.samples);
    const auto want = demean(truth_phase(scene.targets[0].motion, cube));
    double worst = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
    EXPECT_LT(worst, 0.05);
    EXPECT_NEAR(*std::max_element(want.begin(), want.end()), oracle::kPhasePeak1mm, 1e-3);
}

TEST(UnwrapProperty, WrapThenUnwrapIsExact)
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> step(-oracle::kPi * 0.999, oracle::kPi * 0.999);
    std::uniform_real_distribution<double> start(-50.0, 50.0);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> truth{start(rng)};
        for (int i = 0; i < 200; ++i) truth.push_back(truth.back() + step(rng));
        std::vector<double> wrapped;
        for (double v : truth) wrapped.push_back(std::atan2(std::sin(v), std::cos(v)));
        const auto out = unwrap(wrapped);
        const double offset = truth[0] - out[0];
        ASSERT_NEAR(std::remainder(offset, 2.0 * oracle::kPi), 0.0, 1e-9);
        for (std::size_t i = 0; i < truth.size(); ++i) ASSERT_NEAR(out[i] + offset, truth[i], 1e-9);
    }
}

TEST(PhaseLinearityProperty, AmplitudeScalesWithDisplacement)
{
    std::vector<double> rms;
    for (double alpha : {0.5, 1.0, 2.0}) {
        const auto cube = sim::synth_cube(single_target(0.50, 0.001 * alpha, 30.0, 6), RadarConfig{}, 120.0);
        auto p = phase_chain(cube, ClutterMethod::ArcCenter).samples;
        remove_linear_trend(p);
        rms.push_back(oracle::rms(p));
    }
    EXPECT_NEAR(rms[0] / rms[1], 0.5, 0.5 * 0.02);
    EXPECT_NEAR(rms[2] / rms[1], 2.0, 2.0 * 0.02);
}

TEST(Detrend, MatchesLeastSquaresOracle)
{
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    std::vector<double> y(500);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = 0.3 + 0.01 * static_cast<double>(i) + g(rng);
    const auto want = oracle::detrend(y);
    remove_linear_trend(y);
    for (std::size_t i = 0; i < y.size(); ++i) EXPECT_NEAR(y[i], want[i], 1e-9);
}

TEST(VariantB, ConstantSeriesBecomesZero)
{
    SlowTimeSeries s;
    s.samples.assign(30, {2.0, 2.0});
    for (const auto& z : variant_b_series(s).series.samples) EXPECT_EQ(z, std::complex<double>(0, 0));
}

TEST(VariantB, ComplexSpectrumPeaksAtRate)
{
    auto scene = single_target(0.50, 0.0005, 30.0, 7);
    const auto cube = sim::synth_cube(scene, RadarConfig{}, 180.0);
    RadarOptions b;
    b.variant = Variant::B;
    const auto rb = process_radar(cube, b);
    EXPECT_TRUE(rb.spectrogram.complex_input);
    EXPECT_EQ(spectral::fraction_within(rb.rates, 15.0, 1.0), 1.0);

    const auto ra = process_radar(cube, RadarOptions{});
    const auto cmp = spectral::compare_rates(ra.rates, rb.rates);
    EXPECT_LE(cmp.mae_bpm, 1.0);
    for (std::size_t i = 0; i < ra.rates.rates_bpm.size(); ++i) {
        ASSERT_LE(std::abs(ra.rates.rates_bpm[i] - rb.rates.rates_bpm[i]), 1.0);
    }
}

TEST(Pipeline, EmptySceneReportsAllZero)
{
    const auto cube = sim::synth_cube(sim::SceneSpec{}, RadarConfig{}, 70.0);
    EXPECT_EQ(code_of([&] { process_radar(cube); }), ErrorCode::AllZero);
}

TEST(Pipeline, StftRateMustMatchFrameRate)
{
    const auto cube = sim::synth_cube(single_target(0.5, 0.001, 30.0), RadarConfig{}, 70.0);
    RadarOptions opts;
    opts.stft.sample_rate_hz = 10.0;
    EXPECT_EQ(code_of([&] { process_radar(cube, opts); }), ErrorCode::InvalidParams);
}
