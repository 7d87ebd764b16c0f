// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#pragma once

#include "radresp/audio_dsp.hpp"
#include "radresp/radar_dsp.hpp"
#include "radresp/simulator.hpp"
#include "radresp/spectral.hpp"

#include <filesystem>
#include <span>
#include <string>

namespace radresp::io {

// Shortest decimal that round-trips to the same double.
std::string format_number(double v);

// Every CSV starts with a single header line.

// frame_time_s, then mean-free power in dB per range bin (column r<range_m>).
void write_range_map_csv(const radar::RangeTimeMap& map, const std::filesystem::path& path);

// frame_time_s,phase_rad
void write_phase_csv(const radar::PhaseTrace& trace, std::span<const double> frame_times_s,
                     const std::filesystem::path& path);

// time_s,envelope
void write_envelope_csv(const audio::EnvelopeTrace& envelope, const std::filesystem::path& path);

// time_s, then one column per bpm bin (bpm<value>); every `stride`-th frame.
void write_spectrogram_csv(const spectral::Spectrogram& spec, const std::filesystem::path& path,
                           std::size_t stride = 1);

// time_s,rate_bpm,magnitude
void write_rates_csv(const spectral::RateSeries& rates, const std::filesystem::path& path);
spectral::RateSeries read_rates_csv(const std::filesystem::path& path);

// time_s,displacement_m,rate_bpm for the first target of the scene.
void write_truth_csv(const sim::SceneSpec& scene, std::span<const double> frame_times_s,
                     const std::filesystem::path& path);

// Single-line JSON summary.
std::string comparison_json(const spectral::RateComparison& cmp, double std_a_bpm, double std_b_bpm);

} // namespace radresp::io
