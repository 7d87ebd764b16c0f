// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "radresp/pipeline.hpp"

#include "radresp/error.hpp"

#include <string>

namespace radresp {

std::string_view to_string(Variant v) noexcept { return v == Variant::A ? "A" : "B"; }

Variant variant_from_string(std::string_view name)
{
    if (name == "A" || name == "a") return Variant::A;
    if (name == "B" || name == "b") return Variant::B;
    throw Error(ErrorCode::InvalidArgument, "variant must be A or B, got '" + std::string(name) + "'");
}

std::string_view to_string(radar::ClutterMethod m) noexcept
{
    switch (m) {
    case radar::ClutterMethod::None: return "none";
    case radar::ClutterMethod::Mean: return "mean";
    case radar::ClutterMethod::ArcCenter: return "arc";
    }
    return "unknown";
}

radar::ClutterMethod clutter_method_from_string(std::string_view name)
{
    if (name == "none") return radar::ClutterMethod::None;
    if (name == "mean") return radar::ClutterMethod::Mean;
    if (name == "arc") return radar::ClutterMethod::ArcCenter;
    throw Error(ErrorCode::InvalidArgument, "clutter method must be none, mean or arc, got '" + std::string(name) + "'");
}

RadarResult process_radar(const RadarCube& cube, const RadarOptions& options)
{
    spectral::validate(options.stft);
    if (options.stft.sample_rate_hz != cube.config.frame_rate_hz) {
        throw Error(ErrorCode::InvalidParams, "STFT sample rate must equal the radar frame rate");
    }
    RadarResult result;
    result.map = radar::range_fft(cube);
    result.target_bin = radar::select_target_bin(result.map, options.min_range_m, options.max_range_m);
    const auto raw = radar::slow_time_series(result.map, result.target_bin);

    if (options.variant == Variant::A) {
        result.series = radar::clutter_remove(raw, options.clutter);
        auto phase = radar::extract_unwrapped_phase(result.series);
        if (options.detrend_phase) {
            radar::remove_linear_trend(phase.samples);
        }
        result.spectrogram = spectral::stft(std::span<const double>(phase.samples), options.stft);
        result.phase = std::move(phase);
    } else {
        result.series = radar::variant_b_series(raw, options.clutter).series;
        result.spectrogram =
            spectral::stft(std::span<const std::complex<double>>(result.series.samples), options.stft);
    }
    result.rates = spectral::extract_rate(result.spectrogram, options.band);
    return result;
}

AudioResult process_audio(const audio::AudioTrace& trace, const AudioOptions& options)
{
    spectral::validate(options.stft);
    if (options.stft.sample_rate_hz != audio::kFrameRateHz) {
        throw Error(ErrorCode::InvalidParams, "STFT sample rate must be 20 Hz for audio envelopes");
    }
    AudioResult result;
    result.decimated = audio::decimate_to_frame_rate(trace, options.decimator);
    result.envelope = audio::envelope(result.decimated, options.rectifier);
    result.spectrogram = spectral::stft(std::span<const double>(result.envelope.samples), options.stft);
    result.rates = spectral::extract_rate(result.spectrogram, options.band);
    return result;
}

} // namespace radresp
