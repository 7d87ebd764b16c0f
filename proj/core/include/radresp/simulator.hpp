// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#pragma once

#include "radresp/audio_dsp.hpp"
#include "radresp/ingest.hpp"
#include "radresp/radar_config.hpp"
#include "radresp/radar_cube.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace radresp::sim {

inline constexpr double kChamberExtentM = 6.0;

/// Quantised cubes put the strongest scatterer at a quarter of int16 full scale.
inline constexpr double kStrongestScattererCounts = 32767.0 / 4.0;

/// Respiration rate switches to `rate_bpm` at `time_s` (phase-continuous).
struct RateStep {
    double time_s = 0.0;
    double rate_bpm = 0.0;

    bool operator==(const RateStep&) const = default;
};

struct MotionSpec {
    double base_range_m = 0.5;
    double resp_rate_bpm = 15.0;
    double resp_amplitude_m = 0.001;
    double harmonic_2_frac = 0.0;
    std::optional<double> heart_rate_bpm;
    std::optional<double> heart_amplitude_m;
    std::vector<RateStep> rate_steps;

    bool operator==(const MotionSpec&) const = default;
};

struct Target {
    MotionSpec motion;
    double reflectivity = 1.0;

    bool operator==(const Target&) const = default;
};

struct StaticReflector {
    double range_m = 1.0;
    double reflectivity = 1.0;

    bool operator==(const StaticReflector&) const = default;
};

struct SceneSpec {
    std::vector<Target> targets;
    std::vector<StaticReflector> static_reflectors;
    std::optional<double> snr_db; // empty: noiseless
    std::uint64_t seed = 0;

    bool operator==(const SceneSpec&) const = default;
};

struct BreathAudioSpec {
    double resp_rate_bpm = 15.0;
    bool exhale_only = true;
    double burst_duration_s = 1.0;
    std::optional<double> noise_db = -30.0; // background RMS in dB re full scale; empty: silent
    std::uint64_t seed = 0;
    double burst_amplitude = 0.25; // RMS of a burst at its peak, full scale 1
    double inhale_level = 0.8;     // inhalation burst level relative to exhalation

    bool operator==(const BreathAudioSpec&) const = default;
};

void validate(const MotionSpec& motion);
void validate(const SceneSpec& scene);
void validate(const BreathAudioSpec& spec);

/// Instantaneous respiration rate, honouring rate steps.
double respiration_rate_bpm(const MotionSpec& motion, double t);

/// d(t) = A [sin(P) + h sin(2P)] + heart term, where P is 2*pi times the
/// integral of the respiration rate (P = 2*pi*r*t without rate steps).
double chest_displacement(const MotionSpec& motion, double t);

/// One target at 0.5 m breathing 15 bpm with 0.5 mm chest motion, chamber
/// wall returns at 1.49 m and 3.0 m, 30 dB SNR.
SceneSpec default_scene();

/// ADC counts per unit reflectivity for `scene`.
double counts_per_reflectivity(const SceneSpec& scene);

/// FMCW beat-signal cube, stop-and-hop, quantised to int16 counts. Noise is
/// complex white Gaussian at snr_db below the strongest scatterer, drawn
/// from a per-frame substream of `seed`.
RadarCube synth_cube(const SceneSpec& scene, const RadarConfig& config, double duration_s);

/// Band-limited noise bursts at exhalation (and inhalation) instants plus
/// white background noise, 44.1 kHz.
audio::AudioTrace synth_audio(const BreathAudioSpec& spec, double duration_s);

void write_capture(const RadarCube& cube, const std::filesystem::path& path);

/// The cube's raw sample stream chunked into <= 1456-byte datagrams.
std::vector<ingest::Datagram> datagram_stream(const RadarCube& cube);

// JSON documents. Unknown keys are rejected with Error(InvalidScene).
SceneSpec scene_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const SceneSpec& scene);
SceneSpec load_scene(const std::filesystem::path& path);

BreathAudioSpec breath_audio_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const BreathAudioSpec& spec);

nlohmann::json to_json(const RadarConfig& config);
RadarConfig radar_config_from_json(const nlohmann::json& doc);

} // namespace radresp::sim
