// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "radresp/fir.hpp"

#include "radresp/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace radresp::fir {

double kaiser_beta(double attenuation_db)
{
    const double a = attenuation_db;
    if (a > 50.0) {
        return 0.1102 * (a - 8.7);
    }
    if (a >= 21.0) {
        return 0.5842 * std::pow(a - 21.0, 0.4) + 0.07886 * (a - 21.0);
    }
    return 0.0;
}

std::size_t kaiser_order(double attenuation_db, double transition_hz, double sample_rate_hz)
{
    if (!(transition_hz > 0.0) || !(sample_rate_hz > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "transition width and sample rate must be positive");
    }
    const double dw = 2.0 * std::numbers::pi * transition_hz / sample_rate_hz;
    auto order = static_cast<std::size_t>(std::ceil((attenuation_db - 7.95) / (2.285 * dw)));
    order = std::max<std::size_t>(order, 2);
    return order + (order % 2);
}

std::vector<double> kaiser_window(std::size_t taps, double beta)
{
    std::vector<double> w(taps, 1.0);
    if (taps < 2) {
        return w;
    }
    const double m = static_cast<double>(taps - 1);
    const double norm = std::cyl_bessel_i(0.0, beta);
    for (std::size_t n = 0; n < taps; ++n) {
        const double r = 2.0 * static_cast<double>(n) / m - 1.0;
        w[n] = std::cyl_bessel_i(0.0, beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / norm;
    }
    return w;
}

std::vector<double> kaiser_lowpass(std::size_t order, double cutoff_hz, double sample_rate_hz, double beta)
{
    const std::size_t taps = order + 1;
    const auto w = kaiser_window(taps, beta);
    const double fc = cutoff_hz / sample_rate_hz; // cycles per sample
    const double centre = 0.5 * static_cast<double>(order);
    std::vector<double> h(taps);
    double sum = 0.0;
    for (std::size_t n = 0; n < taps; ++n) {
        const double t = static_cast<double>(n) - centre;
        const double sinc = t == 0.0 ? 2.0 * fc
                                     : std::sin(2.0 * std::numbers::pi * fc * t) / (std::numbers::pi * t);
        h[n] = sinc * w[n];
        sum += h[n];
    }
    for (double& v : h) {
        v /= sum;
    }
    return h;
}

double magnitude_db(std::span<const double> taps, double freq_hz, double sample_rate_hz)
{
    std::complex<double> acc{};
    const double w = 2.0 * std::numbers::pi * freq_hz / sample_rate_hz;
    for (std::size_t n = 0; n < taps.size(); ++n) {
        acc += taps[n] * std::polar(1.0, -w * static_cast<double>(n));
    }
    return 20.0 * std::log10(std::max(std::abs(acc), 1e-300));
}

std::vector<double> design_lowpass(const LowpassSpec& spec)
{
    if (!(spec.passband_edge_hz > 0.0) || !(spec.stopband_edge_hz > spec.passband_edge_hz) ||
        !(spec.stopband_edge_hz <= 0.5 * spec.sample_rate_hz)) {
        throw Error(ErrorCode::InvalidArgument, "low-pass band edges must satisfy 0 < pass < stop <= fs/2");
    }
    const double beta = kaiser_beta(spec.attenuation_db);
    const double cutoff = 0.5 * (spec.passband_edge_hz + spec.stopband_edge_hz);
    std::size_t order = kaiser_order(spec.attenuation_db, spec.stopband_edge_hz - spec.passband_edge_hz,
                                     spec.sample_rate_hz);
    constexpr int kGrid = 512;
    for (int attempt = 0; attempt < 64; ++attempt, order += 2) {
        auto h = kaiser_lowpass(order, cutoff, spec.sample_rate_hz, beta);
        bool ok = true;
        for (int i = 0; i <= kGrid && ok; ++i) {
            const double f = spec.passband_edge_hz * i / kGrid;
            ok = magnitude_db(h, f, spec.sample_rate_hz) >= -spec.max_passband_loss_db;
        }
        const double nyq = 0.5 * spec.sample_rate_hz;
        for (int i = 0; i <= 4 * kGrid && ok; ++i) {
            const double f = spec.stopband_edge_hz + (nyq - spec.stopband_edge_hz) * i / (4 * kGrid);
            ok = magnitude_db(h, f, spec.sample_rate_hz) <= -spec.attenuation_db;
        }
        if (ok) {
            return h;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "low-pass specification not met within order limit");
}

std::vector<double> filter_same(std::span<const double> x, std::span<const double> taps)
{
    return decimate(x, taps, 1);
}

} // namespace radresp::fir
