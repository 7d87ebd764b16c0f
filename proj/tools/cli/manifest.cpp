// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "manifest.hpp"

#include "radresp/error.hpp"
#include "radresp/simulator.hpp"

#include <fstream>

namespace radresp::cli {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json to_json(const RunManifest& m)
{
    ordered_json doc;
    doc["command"] = m.command;
    doc["inputs"] = m.inputs;
    doc["radar_config"] = m.radar_config ? ordered_json(sim::to_json(*m.radar_config)) : ordered_json(nullptr);
    if (m.stft) {
        doc["stft"] = {{"window_s", m.stft->window_s},
                       {"overlap_s", m.stft->overlap_s},
                       {"window_shape", std::string(spectral::to_string(m.stft->window_shape))},
                       {"sample_rate_hz", m.stft->sample_rate_hz},
                       {"pad_factor", m.stft->pad_factor}};
    } else {
        doc["stft"] = nullptr;
    }
    doc["band"] = m.band ? ordered_json{{"low_bpm", m.band->low_bpm}, {"high_bpm", m.band->high_bpm}}
                         : ordered_json(nullptr);
    doc["variant"] = m.variant ? ordered_json(*m.variant) : ordered_json(nullptr);
    doc["seed"] = m.seed ? ordered_json(*m.seed) : ordered_json(nullptr);
    doc["output_dir"] = m.output_dir.string();
    doc["argv"] = m.argv;
    return doc;
}

RunManifest manifest_from_json(const json& doc)
{
    RunManifest m;
    try {
        m.command = doc.at("command").get<std::string>();
        m.inputs = doc.at("inputs").get<std::vector<std::string>>();
        if (!doc.at("radar_config").is_null()) {
            m.radar_config = sim::radar_config_from_json(doc.at("radar_config"));
        }
        if (!doc.at("stft").is_null()) {
            const auto& s = doc.at("stft");
            spectral::StftParams p;
            p.window_s = s.at("window_s").get<double>();
            p.overlap_s = s.at("overlap_s").get<double>();
            p.window_shape = spectral::window_shape_from_string(s.at("window_shape").get<std::string>());
            p.sample_rate_hz = s.at("sample_rate_hz").get<double>();
            p.pad_factor = s.at("pad_factor").get<std::size_t>();
            m.stft = p;
        }
        if (!doc.at("band").is_null()) {
            m.band = spectral::Band{doc.at("band").at("low_bpm").get<double>(),
                                    doc.at("band").at("high_bpm").get<double>()};
        }
        if (!doc.at("variant").is_null()) {
            m.variant = doc.at("variant").get<std::string>();
        }
        if (!doc.at("seed").is_null()) {
            m.seed = doc.at("seed").get<std::uint64_t>();
        }
        m.output_dir = doc.at("output_dir").get<std::string>();
        m.argv = doc.at("argv").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed manifest: ") + e.what());
    }
    if (m.variant && *m.variant != "A" && *m.variant != "B") {
        throw Error(ErrorCode::InvalidArgument, "manifest variant must be A or B");
    }
    for (const auto& in : m.inputs) {
        if (!std::filesystem::exists(in)) {
            throw Error(ErrorCode::IoFailure, "manifest input does not exist: " + in);
        }
    }
    if (m.argv.empty() || m.argv.front() != m.command) {
        throw Error(ErrorCode::InvalidArgument, "manifest argv does not start with its command");
    }
    return m;
}

void write_manifest(const RunManifest& m)
{
    const auto path = m.output_dir / kManifestName;
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IoFailure, "cannot create " + path.string());
    }
    out << to_json(m).dump(2) << '\n';
    if (!out) {
        throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
    }
}

RunManifest read_manifest(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoFailure, "cannot open manifest " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidArgument, path.string() + ": " + e.what());
    }
    return manifest_from_json(doc);
}

} // namespace radresp::cli
