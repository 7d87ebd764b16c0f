// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "radresp/wav.hpp"

#include "radresp/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace radresp::audio {

namespace {

std::uint32_t u32(const std::uint8_t* p)
{
    return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
           (std::uint32_t{p[3]} << 24);
}
std::uint16_t u16(const std::uint8_t* p)
{
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
void put(std::vector<std::uint8_t>& out, std::uint32_t v, int bytes)
{
    for (int i = 0; i < bytes; ++i) {
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
}
bool tag(const std::uint8_t* p, const char* t) { return std::memcmp(p, t, 4) == 0; }

} // namespace

AudioTrace parse_wav(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 12 || !tag(bytes.data(), "RIFF") || !tag(bytes.data() + 8, "WAVE")) {
        throw Error(ErrorCode::UnsupportedFormat, "not a RIFF/WAVE file");
    }
    bool have_fmt = false;
    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const std::uint8_t* chunk = bytes.data() + pos;
        const std::uint32_t size = u32(chunk + 4);
        const std::size_t body = pos + 8;
        if (size > bytes.size() - body) {
            throw Error(ErrorCode::UnsupportedFormat, "chunk overruns end of file");
        }
        if (tag(chunk, "fmt ")) {
            if (size < 16) {
                throw Error(ErrorCode::UnsupportedFormat, "fmt chunk too short");
            }
            const std::uint8_t* f = bytes.data() + body;
            const std::uint16_t format = u16(f);
            const std::uint16_t channels = u16(f + 2);
            const std::uint32_t rate = u32(f + 4);
            const std::uint16_t bits = u16(f + 14);
            if (format != 1) {
                throw Error(ErrorCode::UnsupportedFormat, "audio format " + std::to_string(format) + " is not PCM");
            }
            if (channels != 1) {
                throw Error(ErrorCode::UnsupportedFormat, std::to_string(channels) + " channels, expected mono");
            }
            if (rate != 44100) {
                throw Error(ErrorCode::UnsupportedFormat, "sample rate " + std::to_string(rate) + ", expected 44100");
            }
            if (bits != 16) {
                throw Error(ErrorCode::UnsupportedFormat, std::to_string(bits) + "-bit samples, expected 16");
            }
            have_fmt = true;
        } else if (tag(chunk, "data")) {
            if (!have_fmt) {
                throw Error(ErrorCode::UnsupportedFormat, "data chunk precedes fmt chunk");
            }
            AudioTrace audio;
            audio.samples.resize(size / 2);
            const std::uint8_t* d = bytes.data() + body;
            for (std::size_t i = 0; i < audio.samples.size(); ++i) {
                audio.samples[i] = static_cast<float>(static_cast<std::int16_t>(u16(d + 2 * i)) / 32768.0);
            }
            return audio;
        }
        pos = body + size + (size & 1);
    }
    throw Error(ErrorCode::UnsupportedFormat, have_fmt ? "no data chunk" : "no fmt chunk");
}

AudioTrace read_wav(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_wav(bytes);
}

std::vector<std::uint8_t> encode_wav(const AudioTrace& audio)
{
    if (audio.rate_hz != kAudioRateHz) {
        throw Error(ErrorCode::UnsupportedFormat, "only 44100 Hz audio can be written");
    }
    const auto data_bytes = static_cast<std::uint32_t>(audio.samples.size() * 2);
    std::vector<std::uint8_t> out;
    out.reserve(44 + data_bytes);
    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    put(out, 36 + data_bytes, 4);
    out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
    put(out, 16, 4);
    put(out, 1, 2);         // PCM
    put(out, 1, 2);         // mono
    put(out, 44100, 4);
    put(out, 44100 * 2, 4); // byte rate
    put(out, 2, 2);         // block align
    put(out, 16, 2);
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    put(out, data_bytes, 4);
    for (float s : audio.samples) {
        const double v = std::clamp(std::nearbyint(static_cast<double>(s) * 32768.0), -32768.0, 32767.0);
        put(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)), 2);
    }
    return out;
}

void write_wav(const AudioTrace& audio, const std::filesystem::path& path)
{
    const auto bytes = encode_wav(audio);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IoFailure, "cannot create " + path.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
    }
}

} // namespace radresp::audio
