// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace radresp::audio {

inline constexpr double kAudioRateHz = 44100.0;
inline constexpr double kFrameRateHz = 20.0;
inline constexpr std::size_t kDecimation = 2205;
inline constexpr std::size_t kAntiAliasOrder = 20;
inline constexpr double kAntiAliasCutoffHz = 10.0;

// Envelope low-pass: 1.5 Hz passband, 3 Hz stopband, 60 dB.
inline constexpr double kEnvelopePassbandHz = 1.5;
inline constexpr double kEnvelopeStopbandHz = 3.0;
inline constexpr double kEnvelopeAttenuationDb = 60.0;

/// Mono audio, full scale +/-1.
struct AudioTrace {
    std::vector<float> samples;
    double rate_hz = kAudioRateHz;
};

/// Non-negative breathing envelope at the radar frame rate.
struct EnvelopeTrace {
    std::vector<double> samples;
    double rate_hz = kFrameRateHz;
};

enum class Decimator {
    AntiAliasFir, // single order-20 Kaiser FIR, then keep every 2205th sample
    Multistage,   // 7 * 7 * 5 * 9 cascade, 80 dB alias rejection below 8 Hz
};

enum class Rectifier { Abs, Square };

std::vector<double> anti_alias_taps();
std::vector<double> envelope_taps();

/// 44.1 kHz -> 20 Hz. Output length is floor(N / 2205).
std::vector<double> decimate_to_frame_rate(const AudioTrace& audio, Decimator kind = Decimator::AntiAliasFir);

/// Rectify, low-pass at 1.5 Hz (delay compensated), clamp at zero.
EnvelopeTrace envelope(std::span<const double> series, Rectifier rectifier = Rectifier::Abs);

} // namespace radresp::audio
