// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#pragma once

#include "radresp/audio_dsp.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace radresp::audio {

// Only PCM 16-bit mono 44.1 kHz is accepted; anything else throws
// Error(UnsupportedFormat) naming the offending field.
AudioTrace parse_wav(std::span<const std::uint8_t> bytes);
AudioTrace read_wav(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_wav(const AudioTrace& audio);
void write_wav(const AudioTrace& audio, const std::filesystem::path& path);

} // namespace radresp::audio
