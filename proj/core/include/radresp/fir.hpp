// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace radresp::fir {

// Kaiser's empirical beta for a stopband attenuation in dB.
double kaiser_beta(double attenuation_db);

// Kaiser's order estimate, rounded up to an even number (type-I filter).
std::size_t kaiser_order(double attenuation_db, double transition_hz, double sample_rate_hz);

std::vector<double> kaiser_window(std::size_t taps, double beta);

// Windowed-sinc low-pass with order+1 symmetric taps, normalised to unity DC gain.
std::vector<double> kaiser_lowpass(std::size_t order, double cutoff_hz, double sample_rate_hz, double beta);

struct LowpassSpec {
    double sample_rate_hz = 0.0;
    double passband_edge_hz = 0.0;
    double stopband_edge_hz = 0.0;
    double attenuation_db = 60.0;
    double max_passband_loss_db = 1.0;
};

/// Kaiser design meeting `spec`: starts from the order estimate and grows the
/// order until the designed taps satisfy both band edges on a dense grid.
std::vector<double> design_lowpass(const LowpassSpec& spec);

double magnitude_db(std::span<const double> taps, double freq_hz, double sample_rate_hz);

/// Delay-compensated convolution with zero padding at the edges:
/// y[n] = sum_k h[k] x[n + D - k], D = (taps - 1) / 2. Output length = input length.
std::vector<double> filter_same(std::span<const double> x, std::span<const double> taps);

/// Delay-compensated filter evaluated only at every `factor`-th input sample;
/// returns floor(x.size() / factor) outputs.
template <typename T>
std::vector<double> decimate(std::span<const T> x, std::span<const double> taps, std::size_t factor)
{
    const std::size_t outputs = x.size() / factor;
    const auto delay = static_cast<std::ptrdiff_t>((taps.size() - 1) / 2);
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    std::vector<double> y(outputs, 0.0);
    for (std::size_t m = 0; m < outputs; ++m) {
        const auto centre = static_cast<std::ptrdiff_t>(m * factor) + delay;
        double acc = 0.0;
        for (std::size_t k = 0; k < taps.size(); ++k) {
            const auto idx = centre - static_cast<std::ptrdiff_t>(k);
            if (idx >= 0 && idx < n) {
                acc += taps[k] * static_cast<double>(x[static_cast<std::size_t>(idx)]);
            }
        }
        y[m] = acc;
    }
    return y;
}

} // namespace radresp::fir
