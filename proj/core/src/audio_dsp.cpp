// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "radresp/audio_dsp.hpp"

#include "radresp/error.hpp"
#include "radresp/fir.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace radresp::audio {

namespace {

constexpr std::array<std::size_t, 4> kStageFactors = {7, 7, 5, 9};
constexpr double kMultistagePassbandHz = 8.0;
constexpr double kMultistageAttenuationDb = 80.0;

const std::vector<std::vector<double>>& multistage_taps()
{
    static const auto taps = [] {
        std::vector<std::vector<double>> stages;
        double rate = kAudioRateHz;
        for (std::size_t factor : kStageFactors) {
            const double out_rate = rate / static_cast<double>(factor);
            fir::LowpassSpec spec;
            spec.sample_rate_hz = rate;
            spec.passband_edge_hz = kMultistagePassbandHz;
            spec.stopband_edge_hz = out_rate - kMultistagePassbandHz;
            spec.attenuation_db = kMultistageAttenuationDb;
            spec.max_passband_loss_db = 0.01;
            stages.push_back(fir::design_lowpass(spec));
            rate = out_rate;
        }
        return stages;
    }();
    return taps;
}

} // namespace

std::vector<double> anti_alias_taps()
{
    // No stopband target is given for this filter; 60 dB sets the window shape.
    return fir::kaiser_lowpass(kAntiAliasOrder, kAntiAliasCutoffHz, kAudioRateHz, fir::kaiser_beta(60.0));
}

std::vector<double> envelope_taps()
{
    static const auto taps = fir::design_lowpass({kFrameRateHz, kEnvelopePassbandHz, kEnvelopeStopbandHz,
                                                  kEnvelopeAttenuationDb, 1.0});
    return taps;
}

std::vector<double> decimate_to_frame_rate(const AudioTrace& audio, Decimator kind)
{
    if (audio.rate_hz != kAudioRateHz) {
        throw Error(ErrorCode::InvalidArgument,
                    "audio must be sampled at 44100 Hz, got " + std::to_string(audio.rate_hz));
    }
    if (audio.samples.size() < kAntiAliasOrder + 1) {
        throw Error(ErrorCode::AudioTooShort,
                    "audio has " + std::to_string(audio.samples.size()) + " samples, need at least 21");
    }
    const std::span<const float> x(audio.samples);
    if (kind == Decimator::AntiAliasFir) {
        const auto taps = anti_alias_taps();
        return fir::decimate(x, std::span<const double>(taps), kDecimation);
    }
    const auto& stages = multistage_taps();
    std::vector<double> y = fir::decimate(x, std::span<const double>(stages[0]), kStageFactors[0]);
    for (std::size_t s = 1; s < stages.size(); ++s) {
        y = fir::decimate(std::span<const double>(y), std::span<const double>(stages[s]), kStageFactors[s]);
    }
    return y;
}

EnvelopeTrace envelope(std::span<const double> series, Rectifier rectifier)
{
    EnvelopeTrace out;
    if (series.empty()) {
        return out;
    }
    std::vector<double> rectified(series.size());
    std::transform(series.begin(), series.end(), rectified.begin(), [rectifier](double v) {
        return rectifier == Rectifier::Abs ? std::abs(v) : v * v;
    });
    const auto taps = envelope_taps();
    out.samples = fir::filter_same(rectified, taps);
    for (double& v : out.samples) {
        v = std::max(v, 0.0);
    }
    return out;
}

} // namespace radresp::audio
