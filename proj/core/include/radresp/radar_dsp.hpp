// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#pragma once

#include "radresp/radar_cube.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace radresp::radar {

/// Complex range profile per frame, [frame][range_bin]. Bin k is centred at
/// k * bin_spacing_m. Values are normalised by the window's coherent gain, so
/// a unit-amplitude scatterer centred on a bin reads as magnitude 1.
struct RangeTimeMap {
    std::size_t frames = 0;
    std::size_t bins = 0;
    std::vector<std::complex<double>> values;
    std::vector<double> frame_times_s;
    double bin_spacing_m = 0.0;
    double frame_rate_hz = 0.0;

    std::complex<double>& at(std::size_t frame, std::size_t bin) { return values[frame * bins + bin]; }
    const std::complex<double>& at(std::size_t frame, std::size_t bin) const
    {
        return values[frame * bins + bin];
    }
    double bin_range_m(std::size_t bin) const noexcept
    {
        return static_cast<double>(bin) * bin_spacing_m;
    }
};

/// Time-averaged power and its coefficient of variation per range bin.
struct StaticProfile {
    std::vector<double> mean_power_db;
    std::vector<double> cov;
};

/// Complex slow-time samples of one range bin.
struct SlowTimeSeries {
    std::vector<std::complex<double>> samples;
    double rate_hz = 0.0;
    std::size_t source_bin = 0;
    double source_range_m = 0.0;
};

/// Slow-time series destined for complex-input time-frequency analysis
/// (no phase extraction).
struct ComplexTrace {
    SlowTimeSeries series;
};

struct PhaseTrace {
    std::vector<double> samples; // radians
    double rate_hz = 0.0;
    std::size_t source_bin = 0;
    double source_range_m = 0.0;
};

/// How the static (clutter) component of a slow-time series is estimated.
///
/// Mean subtracts the complex average. ArcCenter subtracts the centre of the
/// least-squares circle through the samples: a constant-amplitude reflector
/// whose phase swings over an arc plus a static return traces such a circle,
/// so its centre is the static return regardless of how much of the circle
/// the motion covers. ArcCenter falls back to Mean when the samples do not
/// define a circle (constant or collinear).
enum class ClutterMethod { None, Mean, ArcCenter };

/// Coherent chirp average, Hann window over fast time, FFT over all
/// samples_per_chirp bins. Fast-time phase is referenced to the chirp centre.
RangeTimeMap range_fft(const RadarCube& cube);

StaticProfile static_profile(const RangeTimeMap& map);

std::vector<double> mean_bin_power(const RangeTimeMap& map);

/// Strongest time-averaged bin whose centre lies in [min_m, max_m]; ties go
/// to the smaller bin.
std::size_t select_target_bin(const RangeTimeMap& map, double min_m = 0.10, double max_m = 0.80);

SlowTimeSeries slow_time_series(const RangeTimeMap& map, std::size_t bin);

/// Subtracts the complex arithmetic mean.
SlowTimeSeries clutter_remove(const SlowTimeSeries& series);
SlowTimeSeries clutter_remove(const SlowTimeSeries& series, ClutterMethod method);

std::complex<double> estimate_arc_center(std::span<const std::complex<double>> samples);

/// Wrapped argument then unwrapped. Throws AllZero when every sample is zero
/// and ZeroMagnitudeSample when any single sample is.
PhaseTrace extract_unwrapped_phase(const SlowTimeSeries& series);

/// Adds the multiple of 2*pi to each step that brings it into [-pi, pi].
std::vector<double> unwrap(std::span<const double> wrapped);

/// Subtracts the least-squares line fitted against sample index.
void remove_linear_trend(std::span<double> values);

ComplexTrace variant_b_series(const SlowTimeSeries& series, ClutterMethod method = ClutterMethod::Mean);

} // namespace radresp::radar
