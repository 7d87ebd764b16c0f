// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#pragma once

#include "radresp/radar_config.hpp"
#include "radresp/spectral.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace radresp::cli {

inline constexpr const char* kManifestName = "manifest.json";

/// Written beside every run's outputs. `argv` is the canonical argument list
/// (absolute paths, every option explicit) that reproduces the run.
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::optional<RadarConfig> radar_config;
    std::optional<spectral::StftParams> stft;
    std::optional<spectral::Band> band;
    std::optional<std::string> variant;
    std::optional<std::uint64_t> seed;
    std::filesystem::path output_dir;
    std::vector<std::string> argv;
};

nlohmann::ordered_json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& doc);

void write_manifest(const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& path);

} // namespace radresp::cli
