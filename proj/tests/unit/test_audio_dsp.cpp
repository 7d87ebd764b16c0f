// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "error_code.hpp"
#include "oracles.hpp"

#include "radresp/audio_dsp.hpp"
#include "radresp/fir.hpp"
#include "radresp/pipeline.hpp"
#include "radresp/simulator.hpp"
#include "radresp/wav.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace radresp;
using namespace radresp::audio;

namespace {

AudioTrace tone(double freq_hz, double amplitude, double seconds, double offset = 0.0)
{
    AudioTrace a;
    const auto n = static_cast<std::size_t>(seconds * kAudioRateHz);
    a.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        a.samples[i] = static_cast<float>(offset + amplitude * std::sin(2.0 * oracle::kPi * freq_hz *
                                                                        static_cast<double>(i) / kAudioRateHz));
    }
    return a;
}

bool symmetric(const std::vector<double>& h)
{
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (std::abs(h[i] - h[h.size() - 1 - i]) > 1e-15) return false;
    }
    return true;
}

double sum(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

} // namespace

TEST(AudioConstants, ProtocolValues)
{
    EXPECT_EQ(kAudioRateHz, 44100.0);
    EXPECT_EQ(kFrameRateHz, 20.0);
    EXPECT_EQ(kAntiAliasOrder, 20u);
    EXPECT_EQ(kEnvelopePassbandHz, 1.5);
    EXPECT_EQ(kEnvelopeAttenuationDb, 60.0);
    EXPECT_EQ(kDecimation, 2205u);
    EXPECT_EQ(kEnvelopeStopbandHz, 3.0);
}

TEST(Kaiser, BetaForSixtyDb)
{
    EXPECT_NEAR(fir::kaiser_beta(60.0), oracle::kaiser_beta_60db(), 1e-12);
    EXPECT_NEAR(fir::kaiser_beta(60.0), 5.65, 0.01);
    EXPECT_EQ(fir::kaiser_beta(15.0), 0.0);
}

TEST(Kaiser, WindowMatchesSeriesOracle)
{
    const double beta = 5.65326;
    const auto w = fir::kaiser_window(31, beta);
    ASSERT_EQ(w.size(), 31u);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double r = 2.0 * static_cast<double>(i) / 30.0 - 1.0;
        const double want = oracle::bessel_i0(beta * std::sqrt(1.0 - r * r)) / oracle::bessel_i0(beta);
        EXPECT_NEAR(w[i], want, 1e-12);
    }
}

TEST(Kaiser, OrderEstimateIsEven)
{
    for (double tw : {0.5, 1.0, 1.5, 2.0}) {
        EXPECT_EQ(fir::kaiser_order(60.0, tw, 20.0) % 2, 0u);
    }
}

TEST(AntiAliasFilter, TwentyFirstOrderUnityDc)
{
    const auto h = anti_alias_taps();
    EXPECT_EQ(h.size(), 21u);
    EXPECT_TRUE(symmetric(h));
    EXPECT_NEAR(sum(h), 1.0, 1e-12);
    EXPECT_NEAR(oracle::response_db(h, 0.25, kAudioRateHz), 0.0, 1e-6);
}

TEST(EnvelopeFilter, MeetsBandEdges)
{
    const auto h = envelope_taps();
    EXPECT_TRUE(symmetric(h));
    EXPECT_EQ(h.size() % 2, 1u);
    EXPECT_NEAR(sum(h), 1.0, 1e-12);
    for (double f = 0.0; f <= 1.5; f += 0.005) {
        EXPECT_GE(oracle::response_db(h, f, kFrameRateHz), -1.0) << f;
    }
    for (double f = 3.0; f <= 10.0; f += 0.005) {
        EXPECT_LE(oracle::response_db(h, f, kFrameRateHz), -60.0) << f;
    }
}

TEST(EnvelopeFilter, LibraryResponseAgreesWithOracle)
{
    const auto h = envelope_taps();
    for (double f : {0.3, 1.5, 2.2, 3.0, 7.7}) {
        EXPECT_NEAR(fir::magnitude_db(h, f, kFrameRateHz), oracle::response_db(h, f, kFrameRateHz), 1e-9);
    }
}

TEST(DesignLowpass, RejectsImpossibleSpec)
{
    fir::LowpassSpec spec{20.0, 3.0, 1.5, 60.0, 1.0};
    EXPECT_EQ(code_of([&] { fir::design_lowpass(spec); }), ErrorCode::InvalidArgument);
}

TEST(FilterSame, ImpulseReturnsCentredTaps)
{
    const std::vector<double> taps = {0.1, 0.2, 0.4, 0.2, 0.1};
    std::vector<double> x(11, 0.0);
    x[5] = 1.0;
    const auto y = fir::filter_same(x, taps);
    ASSERT_EQ(y.size(), x.size());
    for (std::size_t i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(y[3 + i], taps[i]);
    EXPECT_EQ(y[2], 0.0);
    EXPECT_EQ(y[8], 0.0);
}

TEST(Decimate, ZerosGiveZerosOfFloorLength)
{
    AudioTrace a;
    a.samples.assign(44100 * 3 + 1000, 0.0f);
    const auto y = decimate_to_frame_rate(a);
    EXPECT_EQ(y.size(), (44100u * 3 + 1000) / 2205);
    for (double v : y) EXPECT_EQ(v, 0.0);
}

TEST(Decimate, DcGainIsUnity)
{
    AudioTrace a;
    a.samples.assign(44100 * 10, 0.5f);
    const auto single = decimate_to_frame_rate(a, Decimator::AntiAliasFir);
    ASSERT_EQ(single.size(), 200u);
    for (std::size_t i = 1; i + 1 < single.size(); ++i) EXPECT_NEAR(single[i], 0.5, 1e-6);
    // The cascade's final stage spans several output samples; skip its edge transient.
    const auto multi = decimate_to_frame_rate(a, Decimator::Multistage);
    ASSERT_EQ(multi.size(), 200u);
    for (std::size_t i = 40; i + 40 < multi.size(); ++i) EXPECT_NEAR(multi[i], 0.5, 1e-4);
}

TEST(Decimate, QuarterHertzSinusoidSurvives)
{
    const auto a = tone(0.25, 0.8, 40.0);
    for (auto kind : {Decimator::AntiAliasFir, Decimator::Multistage}) {
        const auto y = decimate_to_frame_rate(a, kind);
        ASSERT_EQ(y.size(), 800u);
        // Closed-form resample: x(m / 20 s).
        for (std::size_t m = 20; m + 20 < y.size(); ++m) {
            const double want = 0.8 * std::sin(2.0 * oracle::kPi * 0.25 * static_cast<double>(m) / 20.0);
            EXPECT_NEAR(y[m], want, 0.05 * 0.8);
        }
    }
}

TEST(Decimate, OnlyMultistageRejectsBreathBandAliases)
{
    // 701 Hz folds to 1 Hz at 20 Hz.
    const auto a = tone(701.0, 0.5, 10.0);
    const auto single = decimate_to_frame_rate(a, Decimator::AntiAliasFir);
    const auto multi = decimate_to_frame_rate(a, Decimator::Multistage);
    EXPECT_GT(oracle::rms(single), 0.3);
    EXPECT_LT(oracle::rms(std::span<const double>(multi).subspan(5, multi.size() - 10)), 1e-3);
}

TEST(Decimate, Errors)
{
    AudioTrace tiny;
    tiny.samples.assign(20, 0.0f);
    EXPECT_EQ(code_of([&] { decimate_to_frame_rate(tiny); }), ErrorCode::AudioTooShort);
    AudioTrace wrong_rate;
    wrong_rate.samples.assign(48000, 0.0f);
    wrong_rate.rate_hz = 48000.0;
    EXPECT_EQ(code_of([&] { decimate_to_frame_rate(wrong_rate); }), ErrorCode::InvalidArgument);
}

TEST(DecimateProperty, OutputLengthIsFloor)
{
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 40; ++trial) {
        AudioTrace a;
        a.samples.assign(21 + rng() % 100000, 0.1f);
        for (auto kind : {Decimator::AntiAliasFir, Decimator::Multistage}) {
            ASSERT_EQ(decimate_to_frame_rate(a, kind).size(), a.samples.size() / 2205);
        }
    }
}

TEST(Envelope, ZeroAndEmpty)
{
    const std::vector<double> zeros(100, 0.0);
    for (double v : envelope(zeros).samples) EXPECT_EQ(v, 0.0);
    EXPECT_TRUE(envelope(std::vector<double>{}).samples.empty());
}

TEST(Envelope, ConstantPassesAtUnityGain)
{
    const std::vector<double> c(400, -0.7);
    const auto e = envelope(c);
    EXPECT_EQ(e.rate_hz, 20.0);
    const std::size_t half = envelope_taps().size() / 2;
    for (std::size_t i = half; i + half < e.samples.size(); ++i) EXPECT_NEAR(e.samples[i], 0.7, 1e-9);
    const auto sq = envelope(c, Rectifier::Square);
    EXPECT_NEAR(sq.samples[200], 0.49, 1e-9);
}

TEST(EnvelopeProperty, NeverNegative)
{
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(200 + rng() % 500);
        for (double& v : x) v = g(rng) * (trial % 3 == 0 ? 0.0 : 1.0) + (rng() % 50 == 0 ? 5.0 : 0.0);
        for (double v : envelope(x).samples) ASSERT_GE(v, 0.0);
    }
}

TEST(GroupDelay, BurstPeakAlignsWithCentre)
{
    // A non-negative Hann-squared burst centred at 10 s, through both filters.
    AudioTrace a;
    a.samples.assign(static_cast<std::size_t>(20.0 * kAudioRateHz), 0.0f);
    const double centre = 10.0;
    const double half = 0.6;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const double t = static_cast<double>(i) / kAudioRateHz;
        if (std::abs(t - centre) < half) {
            const double s = std::cos(oracle::kPi * (t - centre) / (2.0 * half));
            a.samples[i] = static_cast<float>(0.5 * s * s);
        }
    }
    const auto env = envelope(decimate_to_frame_rate(a));
    const auto peak = std::max_element(env.samples.begin(), env.samples.end()) - env.samples.begin();
    EXPECT_LE(std::abs(static_cast<double>(peak) - centre * 20.0), 2.0);
}

TEST(AudioPipeline, ExhaleOnlyFindsRate)
{
    sim::BreathAudioSpec spec;
    spec.resp_rate_bpm = 15.0;
    spec.exhale_only = true;
    spec.seed = 3;
    const auto result = process_audio(sim::synth_audio(spec, 150.0));
    EXPECT_EQ(spectral::fraction_within(result.rates, 15.0, 1.0), 1.0);
    for (double v : result.envelope.samples) ASSERT_GE(v, 0.0);
}

TEST(AudioPipeline, BothSoundsDoublesRate)
{
    sim::BreathAudioSpec spec;
    spec.resp_rate_bpm = 15.0;
    spec.exhale_only = false;
    spec.seed = 3;
    const auto result = process_audio(sim::synth_audio(spec, 150.0));
    EXPECT_EQ(spectral::fraction_within(result.rates, 30.0, 1.0), 1.0);
}

TEST(Wav, RoundTripIsSampleExact)
{
    AudioTrace a;
    for (int i = -32768; i <= 32767; i += 97) a.samples.push_back(static_cast<float>(i) / 32768.0f);
    const auto bytes = encode_wav(a);
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "RIFF");
    EXPECT_EQ(std::string(bytes.begin() + 8, bytes.begin() + 12), "WAVE");
    EXPECT_EQ(bytes.size(), 44 + 2 * a.samples.size());
    const auto back = parse_wav(bytes);
    EXPECT_EQ(back.rate_hz, 44100.0);
    EXPECT_EQ(back.samples, a.samples);
}

TEST(Wav, FileRoundTripAndClipping)
{
    oracle::TempDir dir("wav");
    AudioTrace a;
    a.samples = {0.0f, 1.0f, -1.0f, 0.25f};
    write_wav(a, dir / "a.wav");
    const auto back = read_wav(dir / "a.wav");
    ASSERT_EQ(back.samples.size(), 4u);
    EXPECT_EQ(back.samples[0], 0.0f);
    EXPECT_NEAR(back.samples[1], 1.0f, 1.0 / 32768.0);
    EXPECT_EQ(back.samples[2], -1.0f);
    EXPECT_EQ(back.samples[3], 0.25f);
}

TEST(Wav, SkipsUnknownChunks)
{
    AudioTrace a;
    a.samples = {0.5f, -0.5f};
    auto bytes = encode_wav(a);
    const std::vector<std::uint8_t> list = {'L', 'I', 'S', 'T', 3, 0, 0, 0, 'a', 'b', 'c', 0};
    bytes.insert(bytes.begin() + 36, list.begin(), list.end());
    const std::uint32_t riff = static_cast<std::uint32_t>(bytes.size() - 8);
    for (int i = 0; i < 4; ++i) bytes[4 + i] = static_cast<std::uint8_t>(riff >> (8 * i));
    EXPECT_EQ(parse_wav(bytes).samples, a.samples);
}

TEST(Wav, RejectsOtherFormats)
{
    AudioTrace a;
    a.samples = {0.0f, 0.0f};
    const auto good = encode_wav(a);
    auto patch16 = [&](std::size_t off, std::uint16_t v) {
        auto b = good;
        b[off] = static_cast<std::uint8_t>(v);
        b[off + 1] = static_cast<std::uint8_t>(v >> 8);
        return b;
    };
    auto patch32 = [&](std::size_t off, std::uint32_t v) {
        auto b = good;
        for (int i = 0; i < 4; ++i) b[off + i] = static_cast<std::uint8_t>(v >> (8 * i));
        return b;
    };
    EXPECT_EQ(code_of([&] { parse_wav(patch16(20, 3)); }), ErrorCode::UnsupportedFormat);    // float
    EXPECT_EQ(code_of([&] { parse_wav(patch16(22, 2)); }), ErrorCode::UnsupportedFormat);    // stereo
    EXPECT_EQ(code_of([&] { parse_wav(patch32(24, 48000)); }), ErrorCode::UnsupportedFormat); // rate
    EXPECT_EQ(code_of([&] { parse_wav(patch16(34, 8)); }), ErrorCode::UnsupportedFormat);    // 8-bit
    auto not_riff = good;
    not_riff[0] = 'X';
    EXPECT_EQ(code_of([&] { parse_wav(not_riff); }), ErrorCode::UnsupportedFormat);
    EXPECT_EQ(code_of([&] { parse_wav(std::vector<std::uint8_t>(good.begin(), good.begin() + 30)); }),
              ErrorCode::UnsupportedFormat);
}

TEST(WavProperty, FuzzIsTotal)
{
    std::mt19937_64 rng(4);
    AudioTrace a;
    a.samples.assign(64, 0.1f);
    const auto base = encode_wav(a);
    for (int trial = 0; trial < 5000; ++trial) {
        auto b = base;
        for (int i = 0; i < 3; ++i) b[rng() % b.size()] = static_cast<std::uint8_t>(rng());
        if (rng() % 3 == 0) b.resize(rng() % b.size());
        try {
            const auto t = parse_wav(b);
            for (float v : t.samples) ASSERT_TRUE(v >= -1.0f && v <= 1.0f);
        } catch (const Error& e) {
            ASSERT_EQ(e.code(), ErrorCode::UnsupportedFormat);
        }
    }
}
