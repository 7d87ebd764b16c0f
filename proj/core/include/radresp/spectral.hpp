// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace radresp::spectral {

enum class WindowShape { Blackman, Hann, Rectangular };

std::string_view to_string(WindowShape shape) noexcept;
WindowShape window_shape_from_string(std::string_view name);

/// Sliding-window DFT settings. The defaults give a 1200-sample window,
/// 1-sample hop and 1 bpm bin spacing at 20 Hz.
struct StftParams {
    double window_s = 60.0;
    double overlap_s = 59.95;
    WindowShape window_shape = WindowShape::Blackman;
    double sample_rate_hz = 20.0;
    std::size_t pad_factor = 1; // display interpolation only

    std::size_t window_samples() const;
    std::size_t hop_samples() const;
    std::size_t fft_size() const { return window_samples() * pad_factor; }
    double bin_spacing_bpm() const;

    bool operator==(const StftParams&) const = default;
};

/// Throws InvalidParams unless overlap < window, the window is a whole number
/// of samples and the hop is at least one sample.
void validate(const StftParams& params);

/// Symmetric window of length n.
std::vector<double> make_window(WindowShape shape, std::size_t n);

/// Magnitudes [time_frame][freq_bin], normalised by the window sum so a
/// unit-amplitude real sinusoid centred on a bin reads 0.5.
///
/// Real input keeps bins 0..fft_size/2 (0 to Nyquist). Complex input keeps
/// every bin, ordered from the most negative frequency upwards.
struct Spectrogram {
    std::size_t frames = 0;
    std::size_t bins = 0;
    std::vector<double> magnitudes;
    std::vector<double> freq_axis_bpm;
    std::vector<double> time_axis_s; // window centres
    bool complex_input = false;

    double at(std::size_t frame, std::size_t bin) const { return magnitudes[frame * bins + bin]; }
    double& at(std::size_t frame, std::size_t bin) { return magnitudes[frame * bins + bin]; }
};

Spectrogram stft(std::span<const double> trace, const StftParams& params = {});
Spectrogram stft(std::span<const std::complex<double>> trace, const StftParams& params = {});

/// Number of STFT frames for a trace of `samples` samples.
std::size_t frame_count(std::size_t samples, const StftParams& params);

struct Band {
    double low_bpm = 6.0;
    double high_bpm = 60.0;
};

struct RateSeries {
    std::vector<double> times_s;
    std::vector<double> rates_bpm;
    std::vector<double> magnitudes;
};

/// Per-frame argmax over bins whose |frequency| lies in `band`; ties go to
/// the lower rate.
RateSeries extract_rate(const Spectrogram& spec, Band band = {});

struct RateComparison {
    double mae_bpm = 0.0;
    double rmse_bpm = 0.0;
    double within_2bpm_fraction = 0.0;
    std::size_t n_instants = 0;
};

/// Pairs each instant of `a` with the nearest instant of `b` within 0.5 s.
RateComparison compare_rates(const RateSeries& a, const RateSeries& b);

double rate_stddev(const RateSeries& series);

/// Fraction of instants whose rate is within `tolerance_bpm` of `truth_bpm`.
double fraction_within(const RateSeries& series, double truth_bpm, double tolerance_bpm);

} // namespace radresp::spectral
