// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "radresp/error.hpp"
#include "radresp/simulator.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <initializer_list>
#include <string>

namespace radresp::sim {

using nlohmann::json;

namespace {

void require_object(const json& doc, const char* what)
{
    if (!doc.is_object()) {
        throw Error(ErrorCode::InvalidScene, std::string(what) + " must be a JSON object");
    }
}

void reject_unknown(const json& doc, std::initializer_list<const char*> known, const char* what)
{
    for (const auto& [key, value] : doc.items()) {
        bool ok = false;
        for (const char* k : known) {
            ok = ok || key == k;
        }
        if (!ok) {
            throw Error(ErrorCode::InvalidScene, std::string("unknown field '") + key + "' in " + what);
        }
    }
}

template <typename T>
T get_or(const json& doc, const char* key, T fallback)
{
    if (!doc.contains(key)) {
        return fallback;
    }
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidScene, std::string("field '") + key + "': " + e.what());
    }
}

std::optional<double> get_optional(const json& doc, const char* key, std::optional<double> fallback)
{
    if (!doc.contains(key)) {
        return fallback;
    }
    if (doc.at(key).is_null()) {
        return std::nullopt;
    }
    return get_or<double>(doc, key, 0.0);
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

MotionSpec motion_from_json(const json& doc)
{
    require_object(doc, "motion");
    reject_unknown(doc,
                   {"base_range_m", "resp_rate_bpm", "resp_amplitude_m", "harmonic_2_frac", "heart_rate_bpm",
                    "heart_amplitude_m", "rate_steps"},
                   "motion");
    MotionSpec m;
    m.base_range_m = get_or(doc, "base_range_m", m.base_range_m);
    m.resp_rate_bpm = get_or(doc, "resp_rate_bpm", m.resp_rate_bpm);
    m.resp_amplitude_m = get_or(doc, "resp_amplitude_m", m.resp_amplitude_m);
    m.harmonic_2_frac = get_or(doc, "harmonic_2_frac", m.harmonic_2_frac);
    m.heart_rate_bpm = get_optional(doc, "heart_rate_bpm", std::nullopt);
    m.heart_amplitude_m = get_optional(doc, "heart_amplitude_m", std::nullopt);
    if (doc.contains("rate_steps")) {
        const auto& steps = doc.at("rate_steps");
        if (!steps.is_array()) {
            throw Error(ErrorCode::InvalidScene, "rate_steps must be an array");
        }
        for (const auto& s : steps) {
            require_object(s, "rate step");
            reject_unknown(s, {"time_s", "rate_bpm"}, "rate step");
            m.rate_steps.push_back({get_or(s, "time_s", 0.0), get_or(s, "rate_bpm", 0.0)});
        }
    }
    return m;
}

json motion_to_json(const MotionSpec& m)
{
    json steps = json::array();
    for (const auto& s : m.rate_steps) {
        steps.push_back({{"time_s", s.time_s}, {"rate_bpm", s.rate_bpm}});
    }
    return {{"base_range_m", m.base_range_m},
            {"resp_rate_bpm", m.resp_rate_bpm},
            {"resp_amplitude_m", m.resp_amplitude_m},
            {"harmonic_2_frac", m.harmonic_2_frac},
            {"heart_rate_bpm", optional_json(m.heart_rate_bpm)},
            {"heart_amplitude_m", optional_json(m.heart_amplitude_m)},
            {"rate_steps", steps}};
}

} // namespace

SceneSpec scene_from_json(const json& doc)
{
    require_object(doc, "scene");
    reject_unknown(doc, {"targets", "static_reflectors", "snr_db", "seed"}, "scene");
    SceneSpec scene;
    if (doc.contains("targets")) {
        if (!doc.at("targets").is_array()) {
            throw Error(ErrorCode::InvalidScene, "targets must be an array");
        }
        for (const auto& t : doc.at("targets")) {
            require_object(t, "target");
            reject_unknown(t, {"motion", "reflectivity"}, "target");
            if (!t.contains("motion")) {
                throw Error(ErrorCode::InvalidScene, "target is missing 'motion'");
            }
            scene.targets.push_back({motion_from_json(t.at("motion")), get_or(t, "reflectivity", 1.0)});
        }
    }
    if (doc.contains("static_reflectors")) {
        if (!doc.at("static_reflectors").is_array()) {
            throw Error(ErrorCode::InvalidScene, "static_reflectors must be an array");
        }
        for (const auto& r : doc.at("static_reflectors")) {
            require_object(r, "static reflector");
            reject_unknown(r, {"range_m", "reflectivity"}, "static reflector");
            if (!r.contains("range_m")) {
                throw Error(ErrorCode::InvalidScene, "static reflector is missing 'range_m'");
            }
            scene.static_reflectors.push_back({get_or(r, "range_m", 0.0), get_or(r, "reflectivity", 1.0)});
        }
    }
    scene.snr_db = get_optional(doc, "snr_db", std::nullopt);
    scene.seed = get_or<std::uint64_t>(doc, "seed", 0);
    validate(scene);
    return scene;
}

json to_json(const SceneSpec& scene)
{
    json targets = json::array();
    for (const auto& t : scene.targets) {
        targets.push_back({{"motion", motion_to_json(t.motion)}, {"reflectivity", t.reflectivity}});
    }
    json reflectors = json::array();
    for (const auto& r : scene.static_reflectors) {
        reflectors.push_back({{"range_m", r.range_m}, {"reflectivity", r.reflectivity}});
    }
    return {{"targets", targets},
            {"static_reflectors", reflectors},
            {"snr_db", optional_json(scene.snr_db)},
            {"seed", scene.seed}};
}

SceneSpec load_scene(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoFailure, "cannot open scene " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidScene, path.string() + ": " + e.what());
    }
    return scene_from_json(doc);
}

BreathAudioSpec breath_audio_from_json(const json& doc)
{
    require_object(doc, "breath audio spec");
    reject_unknown(doc,
                   {"resp_rate_bpm", "exhale_only", "burst_duration_s", "noise_db", "seed", "burst_amplitude",
                    "inhale_level"},
                   "breath audio spec");
    BreathAudioSpec s;
    s.resp_rate_bpm = get_or(doc, "resp_rate_bpm", s.resp_rate_bpm);
    s.exhale_only = get_or(doc, "exhale_only", s.exhale_only);
    s.burst_duration_s = get_or(doc, "burst_duration_s", s.burst_duration_s);
    s.noise_db = get_optional(doc, "noise_db", s.noise_db);
    s.seed = get_or<std::uint64_t>(doc, "seed", s.seed);
    s.burst_amplitude = get_or(doc, "burst_amplitude", s.burst_amplitude);
    s.inhale_level = get_or(doc, "inhale_level", s.inhale_level);
    validate(s);
    return s;
}

json to_json(const BreathAudioSpec& s)
{
    return {{"resp_rate_bpm", s.resp_rate_bpm},
            {"exhale_only", s.exhale_only},
            {"burst_duration_s", s.burst_duration_s},
            {"noise_db", optional_json(s.noise_db)},
            {"seed", s.seed},
            {"burst_amplitude", s.burst_amplitude},
            {"inhale_level", s.inhale_level}};
}

json to_json(const RadarConfig& c)
{
    return {{"carrier_hz", c.carrier_hz},
            {"chirp_slope_hz_per_s", c.chirp_slope_hz_per_s},
            {"adc_rate_hz", c.adc_rate_hz},
            {"samples_per_chirp", c.samples_per_chirp},
            {"chirps_per_frame", c.chirps_per_frame},
            {"frame_rate_hz", c.frame_rate_hz},
            {"rx_channels", c.rx_channels},
            {"bandwidth_hz", c.bandwidth_hz()}};
}

RadarConfig radar_config_from_json(const json& doc)
{
    if (!doc.is_object()) {
        throw Error(ErrorCode::InvalidConfig, "radar config must be a JSON object");
    }
    RadarConfig c;
    try {
        c.carrier_hz = doc.value("carrier_hz", c.carrier_hz);
        c.chirp_slope_hz_per_s = doc.value("chirp_slope_hz_per_s", c.chirp_slope_hz_per_s);
        c.adc_rate_hz = doc.value("adc_rate_hz", c.adc_rate_hz);
        c.samples_per_chirp = doc.value("samples_per_chirp", c.samples_per_chirp);
        c.chirps_per_frame = doc.value("chirps_per_frame", c.chirps_per_frame);
        c.frame_rate_hz = doc.value("frame_rate_hz", c.frame_rate_hz);
        c.rx_channels = doc.value("rx_channels", c.rx_channels);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, e.what());
    }
    validate(c);
    return c;
}

} // namespace radresp::sim
