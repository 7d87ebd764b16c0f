// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#pragma once

#include "radresp/audio_dsp.hpp"
#include "radresp/radar_cube.hpp"
#include "radresp/radar_dsp.hpp"
#include "radresp/spectral.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace radresp {

/// A: unwrapped phase of the target bin. B: the complex target-bin series.
enum class Variant { A, B };

std::string_view to_string(Variant v) noexcept;
Variant variant_from_string(std::string_view name);
std::string_view to_string(radar::ClutterMethod m) noexcept;
radar::ClutterMethod clutter_method_from_string(std::string_view name);

struct RadarOptions {
    double min_range_m = 0.10;
    double max_range_m = 0.80;
    Variant variant = Variant::A;
    radar::ClutterMethod clutter = radar::ClutterMethod::ArcCenter;
    bool detrend_phase = true;
    spectral::StftParams stft;
    spectral::Band band;
};

struct RadarResult {
    radar::RangeTimeMap map;
    std::size_t target_bin = 0;
    radar::SlowTimeSeries series; // clutter removed
    std::optional<radar::PhaseTrace> phase;
    spectral::Spectrogram spectrogram;
    spectral::RateSeries rates;
};

/// range FFT -> target bin -> clutter removal -> (A: phase | B: complex) -> STFT -> rate.
RadarResult process_radar(const RadarCube& cube, const RadarOptions& options = {});

struct AudioOptions {
    audio::Decimator decimator = audio::Decimator::AntiAliasFir;
    audio::Rectifier rectifier = audio::Rectifier::Abs;
    spectral::StftParams stft;
    spectral::Band band;
};

struct AudioResult {
    std::vector<double> decimated;
    audio::EnvelopeTrace envelope;
    spectral::Spectrogram spectrogram;
    spectral::RateSeries rates;
};

/// decimate to 20 Hz -> envelope -> STFT -> rate.
AudioResult process_audio(const audio::AudioTrace& trace, const AudioOptions& options = {});

} // namespace radresp
