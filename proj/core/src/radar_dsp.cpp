// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "radresp/radar_dsp.hpp"

#include "radresp/error.hpp"
#include "radresp/fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace radresp::radar {

namespace {

std::vector<double> hann(std::size_t n)
{
    std::vector<double> w(n, 1.0);
    if (n < 2) {
        return w;
    }
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return w;
}

} // namespace

RangeTimeMap range_fft(const RadarCube& cube)
{
    if (cube.empty() || cube.samples() == 0 || cube.chirps() == 0) {
        throw Error(ErrorCode::EmptyCube, "range FFT needs at least one frame");
    }
    const std::size_t n = cube.samples();
    const std::size_t chirps = cube.chirps();

    RangeTimeMap map;
    map.frames = cube.frames;
    map.bins = n;
    map.values.resize(cube.frames * n);
    map.frame_times_s = cube.frame_timestamps;
    map.bin_spacing_m = cube.config.bin_spacing_m();
    map.frame_rate_hz = cube.config.frame_rate_hz;

    const auto window = hann(n);
    double gain = 0.0;
    for (double w : window) {
        gain += w;
    }
    // exp(+j 2 pi k c / N) moves the transform origin to the window centre c.
    const double centre = 0.5 * static_cast<double>(n - 1);
    std::vector<std::complex<double>> recentre(n);
    for (std::size_t k = 0; k < n; ++k) {
        recentre[k] = std::polar(1.0 / gain, 2.0 * std::numbers::pi * static_cast<double>(k) * centre /
                                                 static_cast<double>(n));
    }

    Fft fft(n);
    std::vector<std::complex<double>> buf(n);
    std::vector<std::complex<double>> spectrum(n);
    for (std::size_t f = 0; f < cube.frames; ++f) {
        std::fill(buf.begin(), buf.end(), std::complex<double>{});
        for (std::size_t c = 0; c < chirps; ++c) {
            const auto chirp = cube.chirp(f, c);
            for (std::size_t s = 0; s < n; ++s) {
                buf[s] += chirp[s];
            }
        }
        const double inv_chirps = 1.0 / static_cast<double>(chirps);
        for (std::size_t s = 0; s < n; ++s) {
            buf[s] *= window[s] * inv_chirps;
        }
        fft.forward(buf, spectrum);
        for (std::size_t k = 0; k < n; ++k) {
            map.at(f, k) = spectrum[k] * recentre[k];
        }
    }
    return map;
}

std::vector<double> mean_bin_power(const RangeTimeMap& map)
{
    std::vector<double> power(map.bins, 0.0);
    for (std::size_t f = 0; f < map.frames; ++f) {
        for (std::size_t k = 0; k < map.bins; ++k) {
            power[k] += std::norm(map.at(f, k));
        }
    }
    if (map.frames > 0) {
        for (double& p : power) {
            p /= static_cast<double>(map.frames);
        }
    }
    return power;
}

StaticProfile static_profile(const RangeTimeMap& map)
{
    if (map.frames < 2) {
        throw Error(ErrorCode::TooFewFrames, "static profile needs at least 2 frames");
    }
    const auto mean = mean_bin_power(map);
    std::vector<double> var(map.bins, 0.0);
    for (std::size_t f = 0; f < map.frames; ++f) {
        for (std::size_t k = 0; k < map.bins; ++k) {
            const double d = std::norm(map.at(f, k)) - mean[k];
            var[k] += d * d;
        }
    }
    StaticProfile profile;
    profile.mean_power_db.resize(map.bins);
    profile.cov.resize(map.bins);
    for (std::size_t k = 0; k < map.bins; ++k) {
        profile.mean_power_db[k] = mean[k] > 0.0 ? 10.0 * std::log10(mean[k])
                                                 : -std::numeric_limits<double>::infinity();
        const double sd = std::sqrt(var[k] / static_cast<double>(map.frames));
        profile.cov[k] = mean[k] > 0.0 ? sd / mean[k] : 0.0;
    }
    return profile;
}

std::size_t select_target_bin(const RangeTimeMap& map, double min_m, double max_m)
{
    std::size_t first = map.bins;
    std::size_t last = 0;
    for (std::size_t k = 0; k < map.bins; ++k) {
        const double r = map.bin_range_m(k);
        if (r >= min_m && r <= max_m) {
            first = std::min(first, k);
            last = k;
        }
    }
    if (first == map.bins) {
        throw Error(ErrorCode::WindowEmpty, "no range bin centre in [" + std::to_string(min_m) + ", " +
                                                std::to_string(max_m) + "] m");
    }
    const auto power = mean_bin_power(map);
    std::size_t best = first;
    for (std::size_t k = first + 1; k <= last; ++k) {
        if (power[k] > power[best]) {
            best = k;
        }
    }
    return best;
}

SlowTimeSeries slow_time_series(const RangeTimeMap& map, std::size_t bin)
{
    if (bin >= map.bins) {
        throw Error(ErrorCode::InvalidArgument, "range bin " + std::to_string(bin) + " out of range");
    }
    SlowTimeSeries s;
    s.samples.resize(map.frames);
    for (std::size_t f = 0; f < map.frames; ++f) {
        s.samples[f] = map.at(f, bin);
    }
    s.rate_hz = map.frame_rate_hz;
    s.source_bin = bin;
    s.source_range_m = map.bin_range_m(bin);
    return s;
}

SlowTimeSeries clutter_remove(const SlowTimeSeries& series)
{
    return clutter_remove(series, ClutterMethod::Mean);
}

std::complex<double> estimate_arc_center(std::span<const std::complex<double>> samples)
{
    if (samples.empty()) {
        throw Error(ErrorCode::EmptySeries, "cannot estimate clutter of an empty series");
    }
    std::complex<double> mean{};
    for (const auto& z : samples) {
        mean += z;
    }
    mean /= static_cast<double>(samples.size());

    // Bullock's centred Kasa fit.
    double suu = 0, svv = 0, suv = 0, suuu = 0, svvv = 0, suvv = 0, svuu = 0;
    for (const auto& z : samples) {
        const double u = z.real() - mean.real();
        const double v = z.imag() - mean.imag();
        suu += u * u;
        svv += v * v;
        suv += u * v;
        suuu += u * u * u;
        svvv += v * v * v;
        suvv += u * v * v;
        svuu += v * u * u;
    }
    const double det = suu * svv - suv * suv;
    const double scale = (suu + svv) * (suu + svv);
    if (!(scale > 0.0) || det <= 1e-9 * scale) {
        return mean;
    }
    const double rhs_u = 0.5 * (suuu + suvv);
    const double rhs_v = 0.5 * (svvv + svuu);
    const double uc = (rhs_u * svv - rhs_v * suv) / det;
    const double vc = (suu * rhs_v - suv * rhs_u) / det;
    return mean + std::complex<double>(uc, vc);
}

SlowTimeSeries clutter_remove(const SlowTimeSeries& series, ClutterMethod method)
{
    if (series.samples.empty()) {
        throw Error(ErrorCode::EmptySeries, "clutter removal needs a non-empty series");
    }
    SlowTimeSeries out = series;
    std::complex<double> offset{};
    switch (method) {
    case ClutterMethod::None:
        return out;
    case ClutterMethod::Mean:
        for (const auto& z : series.samples) {
            offset += z;
        }
        offset /= static_cast<double>(series.samples.size());
        break;
    case ClutterMethod::ArcCenter:
        offset = estimate_arc_center(series.samples);
        break;
    }
    for (auto& z : out.samples) {
        z -= offset;
    }
    return out;
}

std::vector<double> unwrap(std::span<const double> wrapped)
{
    std::vector<double> out(wrapped.begin(), wrapped.end());
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double correction = 0.0;
    for (std::size_t i = 1; i < wrapped.size(); ++i) {
        const double step = wrapped[i] - wrapped[i - 1];
        if (std::abs(step) > std::numbers::pi) {
            correction -= two_pi * std::round(step / two_pi);
        }
        out[i] = wrapped[i] + correction;
    }
    return out;
}

PhaseTrace extract_unwrapped_phase(const SlowTimeSeries& series)
{
    if (series.samples.empty()) {
        throw Error(ErrorCode::EmptySeries, "phase extraction needs a non-empty series");
    }
    const bool all_zero = std::all_of(series.samples.begin(), series.samples.end(),
                                      [](const auto& z) { return z == std::complex<double>{}; });
    if (all_zero) {
        throw Error(ErrorCode::AllZero, "slow-time series is identically zero; phase is undefined");
    }
    std::vector<double> wrapped(series.samples.size());
    for (std::size_t i = 0; i < wrapped.size(); ++i) {
        const auto& z = series.samples[i];
        if (z == std::complex<double>{}) {
            throw Error(ErrorCode::ZeroMagnitudeSample,
                        "sample " + std::to_string(i) + " has zero magnitude; phase is undefined");
        }
        wrapped[i] = std::arg(z);
    }
    PhaseTrace trace;
    trace.samples = unwrap(wrapped);
    trace.rate_hz = series.rate_hz;
    trace.source_bin = series.source_bin;
    trace.source_range_m = series.source_range_m;
    return trace;
}

void remove_linear_trend(std::span<double> values)
{
    const std::size_t n = values.size();
    if (n < 2) {
        for (double& v : values) {
            v = 0.0;
        }
        return;
    }
    const double mean_x = 0.5 * static_cast<double>(n - 1);
    double mean_y = 0.0;
    for (double v : values) {
        mean_y += v;
    }
    mean_y /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(i) - mean_x;
        sxy += dx * (values[i] - mean_y);
        sxx += dx * dx;
    }
    const double slope = sxy / sxx;
    for (std::size_t i = 0; i < n; ++i) {
        values[i] -= mean_y + slope * (static_cast<double>(i) - mean_x);
    }
}

ComplexTrace variant_b_series(const SlowTimeSeries& series, ClutterMethod method)
{
    return ComplexTrace{clutter_remove(series, method)};
}

} // namespace radresp::radar
