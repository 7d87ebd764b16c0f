// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "radresp/spectral.hpp"

#include "radresp/error.hpp"
#include "radresp/fft.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace radresp::spectral {

namespace {

constexpr double kPairingToleranceS = 0.5;
constexpr double kWithinBpm = 2.0;

template <typename T>
std::complex<double> as_complex(T v)
{
    return std::complex<double>(v);
}

template <typename T>
Spectrogram stft_impl(std::span<const T> trace, const StftParams& params, bool complex_input)
{
    validate(params);
    const std::size_t len = params.window_samples();
    const std::size_t hop = params.hop_samples();
    const std::size_t nfft = params.fft_size();
    if (trace.size() < len) {
        throw Error(ErrorCode::TraceTooShort,
                    "trace of " + std::to_string(trace.size()) + " samples is shorter than the " +
                        std::to_string(len) + "-sample window; reduce window_s explicitly");
    }
    const auto window = make_window(params.window_shape, len);
    const double gain = std::accumulate(window.begin(), window.end(), 0.0);
    const double spacing = params.bin_spacing_bpm();

    Spectrogram spec;
    spec.complex_input = complex_input;
    spec.frames = frame_count(trace.size(), params);
    spec.bins = complex_input ? nfft : nfft / 2 + 1;
    spec.magnitudes.resize(spec.frames * spec.bins);
    spec.freq_axis_bpm.resize(spec.bins);
    const std::size_t shift = complex_input ? nfft / 2 : 0;
    for (std::size_t b = 0; b < spec.bins; ++b) {
        spec.freq_axis_bpm[b] = (static_cast<double>(b) - static_cast<double>(shift)) * spacing;
    }
    spec.time_axis_s.resize(spec.frames);

    Fft fft(nfft);
    std::vector<std::complex<double>> segment(len);
    std::vector<std::complex<double>> out(nfft);
    for (std::size_t t = 0; t < spec.frames; ++t) {
        const std::size_t start = t * hop;
        std::complex<double> mean{};
        for (std::size_t i = 0; i < len; ++i) {
            segment[i] = as_complex(trace[start + i]);
            mean += segment[i];
        }
        mean /= static_cast<double>(len);
        for (std::size_t i = 0; i < len; ++i) {
            segment[i] = (segment[i] - mean) * window[i];
        }
        fft.forward(segment, out);
        for (std::size_t b = 0; b < spec.bins; ++b) {
            // Complex spectra are rotated so bin 0 is the most negative frequency.
            const std::size_t k = complex_input ? (b + nfft - shift) % nfft : b;
            spec.at(t, b) = std::abs(out[k]) / gain;
        }
        spec.time_axis_s[t] = (static_cast<double>(start) + 0.5 * static_cast<double>(len - 1)) /
                              params.sample_rate_hz;
    }
    return spec;
}

} // namespace

std::string_view to_string(WindowShape shape) noexcept
{
    switch (shape) {
    case WindowShape::Blackman: return "blackman";
    case WindowShape::Hann: return "hann";
    case WindowShape::Rectangular: return "rectangular";
    }
    return "unknown";
}

WindowShape window_shape_from_string(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "blackman") return WindowShape::Blackman;
    if (lower == "hann") return WindowShape::Hann;
    if (lower == "rectangular" || lower == "rect") return WindowShape::Rectangular;
    throw Error(ErrorCode::InvalidParams, "unknown window shape '" + std::string(name) + "'");
}

std::size_t StftParams::window_samples() const
{
    return static_cast<std::size_t>(std::llround(window_s * sample_rate_hz));
}

std::size_t StftParams::hop_samples() const
{
    const double hop = std::round((window_s - overlap_s) * sample_rate_hz);
    return hop < 1.0 ? 0 : static_cast<std::size_t>(hop);
}

double StftParams::bin_spacing_bpm() const
{
    return 60.0 * sample_rate_hz / static_cast<double>(fft_size());
}

void validate(const StftParams& params)
{
    if (!(params.sample_rate_hz > 0.0) || !(params.window_s > 0.0) || !std::isfinite(params.window_s)) {
        throw Error(ErrorCode::InvalidParams, "window and sample rate must be positive");
    }
    if (!(params.overlap_s >= 0.0) || !(params.overlap_s < params.window_s)) {
        throw Error(ErrorCode::InvalidParams, "overlap must lie in [0, window_s)");
    }
    const double exact = params.window_s * params.sample_rate_hz;
    if (std::abs(exact - std::round(exact)) > 1e-6 || exact < 2.0) {
        throw Error(ErrorCode::InvalidParams, "window must span a whole number (>= 2) of samples");
    }
    if (params.hop_samples() < 1) {
        throw Error(ErrorCode::InvalidParams, "hop (window - overlap) is below one sample");
    }
    if (params.pad_factor < 1) {
        throw Error(ErrorCode::InvalidParams, "pad factor must be at least 1");
    }
}

std::vector<double> make_window(WindowShape shape, std::size_t n)
{
    std::vector<double> w(n, 1.0);
    if (n < 2 || shape == WindowShape::Rectangular) {
        return w;
    }
    const double m = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 2.0 * std::numbers::pi * static_cast<double>(i) / m;
        if (shape == WindowShape::Blackman) {
            w[i] = 0.42 - 0.5 * std::cos(x) + 0.08 * std::cos(2.0 * x);
        } else {
            w[i] = 0.5 - 0.5 * std::cos(x);
        }
    }
    // The symmetric Blackman formula leaves -1e-17 at the ends.
    w.front() = std::max(w.front(), 0.0);
    w.back() = std::max(w.back(), 0.0);
    return w;
}

std::size_t frame_count(std::size_t samples, const StftParams& params)
{
    const std::size_t len = params.window_samples();
    if (samples < len) {
        return 0;
    }
    return (samples - len) / params.hop_samples() + 1;
}

Spectrogram stft(std::span<const double> trace, const StftParams& params)
{
    return stft_impl(trace, params, false);
}

Spectrogram stft(std::span<const std::complex<double>> trace, const StftParams& params)
{
    return stft_impl(trace, params, true);
}

RateSeries extract_rate(const Spectrogram& spec, Band band)
{
    std::vector<std::size_t> candidates;
    for (std::size_t b = 0; b < spec.bins; ++b) {
        const double f = std::abs(spec.freq_axis_bpm[b]);
        if (f >= band.low_bpm && f <= band.high_bpm) {
            candidates.push_back(b);
        }
    }
    if (candidates.empty()) {
        throw Error(ErrorCode::EmptyBand, "no frequency bin lies in [" + std::to_string(band.low_bpm) + ", " +
                                              std::to_string(band.high_bpm) + "] bpm");
    }
    // Visit candidates from the lowest |frequency| so strict '>' keeps the lower rate on ties.
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(spec.freq_axis_bpm[a]) < std::abs(spec.freq_axis_bpm[b]);
    });

    RateSeries rates;
    rates.times_s = spec.time_axis_s;
    rates.rates_bpm.resize(spec.frames);
    rates.magnitudes.resize(spec.frames);
    for (std::size_t t = 0; t < spec.frames; ++t) {
        std::size_t best = candidates.front();
        double best_mag = spec.at(t, best);
        for (std::size_t b : candidates) {
            if (spec.at(t, b) > best_mag) {
                best = b;
                best_mag = spec.at(t, b);
            }
        }
        rates.rates_bpm[t] = std::abs(spec.freq_axis_bpm[best]);
        rates.magnitudes[t] = best_mag;
    }
    return rates;
}

RateComparison compare_rates(const RateSeries& a, const RateSeries& b)
{
    RateComparison cmp;
    double abs_sum = 0.0;
    double sq_sum = 0.0;
    std::size_t within = 0;
    for (std::size_t i = 0; i < a.times_s.size(); ++i) {
        const double t = a.times_s[i];
        const auto it = std::lower_bound(b.times_s.begin(), b.times_s.end(), t);
        std::size_t best = b.times_s.size();
        double best_dt = kPairingToleranceS;
        auto consider = [&](std::size_t j) {
            const double dt = std::abs(b.times_s[j] - t);
            if (dt <= best_dt) {
                best_dt = dt;
                best = j;
            }
        };
        if (it != b.times_s.end()) {
            consider(static_cast<std::size_t>(it - b.times_s.begin()));
        }
        if (it != b.times_s.begin()) {
            consider(static_cast<std::size_t>(it - b.times_s.begin()) - 1);
        }
        if (best == b.times_s.size()) {
            continue;
        }
        const double d = a.rates_bpm[i] - b.rates_bpm[best];
        abs_sum += std::abs(d);
        sq_sum += d * d;
        within += std::abs(d) <= kWithinBpm + 1e-9 ? 1 : 0;
        ++cmp.n_instants;
    }
    if (cmp.n_instants == 0) {
        throw Error(ErrorCode::NoOverlap, "rate series share no instants within 0.5 s");
    }
    const auto n = static_cast<double>(cmp.n_instants);
    cmp.mae_bpm = abs_sum / n;
    cmp.rmse_bpm = std::sqrt(sq_sum / n);
    cmp.within_2bpm_fraction = static_cast<double>(within) / n;
    return cmp;
}

double rate_stddev(const RateSeries& series)
{
    const auto& r = series.rates_bpm;
    if (r.empty()) {
        return 0.0;
    }
    const double mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
    double acc = 0.0;
    for (double v : r) {
        acc += (v - mean) * (v - mean);
    }
    return std::sqrt(acc / static_cast<double>(r.size()));
}

double fraction_within(const RateSeries& series, double truth_bpm, double tolerance_bpm)
{
    if (series.rates_bpm.empty()) {
        return 0.0;
    }
    const auto hits = std::count_if(series.rates_bpm.begin(), series.rates_bpm.end(), [&](double r) {
        return std::abs(r - truth_bpm) <= tolerance_bpm + 1e-9;
    });
    return static_cast<double>(hits) / static_cast<double>(series.rates_bpm.size());
}

} // namespace radresp::spectral
