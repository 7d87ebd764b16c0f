// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "radresp/ingest.hpp"

#include "radresp/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace radresp::ingest {

namespace {

std::uint64_t read_le(const std::uint8_t* p, std::size_t n)
{
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < n; ++i) {
        v |= std::uint64_t{p[i]} << (8 * i);
    }
    return v;
}

void write_le(std::vector<std::uint8_t>& out, std::uint64_t v, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
}

void write_f64(std::vector<std::uint8_t>& out, double v)
{
    write_le(out, std::bit_cast<std::uint64_t>(v), 8);
}

double read_f64(const std::uint8_t* p) { return std::bit_cast<double>(read_le(p, 8)); }

std::int16_t quantize(double v)
{
    const double r = std::nearbyint(v);
    return static_cast<std::int16_t>(std::clamp(r, -32768.0, 32767.0));
}

} // namespace

Datagram parse_datagram(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() <= kHeaderBytes) {
        throw Error(ErrorCode::TooShort,
                    "datagram of " + std::to_string(bytes.size()) + " bytes has no payload");
    }
    const std::size_t payload_len = bytes.size() - kHeaderBytes;
    if (payload_len > kMaxPayloadBytes) {
        throw Error(ErrorCode::PayloadTooLarge,
                    "payload of " + std::to_string(payload_len) + " bytes exceeds 1456");
    }
    Datagram d;
    d.seq = static_cast<std::uint32_t>(read_le(bytes.data(), 4));
    d.byte_count = read_le(bytes.data() + 4, 6);
    d.payload.assign(bytes.begin() + kHeaderBytes, bytes.end());
    return d;
}

std::vector<std::uint8_t> serialize(const Datagram& datagram)
{
    if (datagram.payload.empty() || datagram.payload.size() > kMaxPayloadBytes) {
        throw Error(ErrorCode::PayloadTooLarge, "payload length must be in [1, 1456]");
    }
    if (datagram.byte_count > kMaxByteCount) {
        throw Error(ErrorCode::InvalidArgument, "byte_count exceeds 48 bits");
    }
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderBytes + datagram.payload.size());
    write_le(out, datagram.seq, 4);
    write_le(out, datagram.byte_count, 6);
    out.insert(out.end(), datagram.payload.begin(), datagram.payload.end());
    return out;
}

std::vector<Datagram> chunk_stream(std::span<const std::uint8_t> stream, std::size_t payload_bytes)
{
    if (payload_bytes == 0 || payload_bytes > kMaxPayloadBytes) {
        throw Error(ErrorCode::InvalidArgument, "payload size must be in [1, 1456]");
    }
    std::vector<Datagram> out;
    out.reserve((stream.size() + payload_bytes - 1) / payload_bytes);
    std::uint64_t offset = 0;
    std::uint32_t seq = 0;
    while (offset < stream.size()) {
        const std::size_t n = std::min<std::size_t>(payload_bytes, stream.size() - offset);
        Datagram d;
        d.seq = seq++;
        d.byte_count = offset;
        d.payload.assign(stream.begin() + static_cast<std::ptrdiff_t>(offset),
                         stream.begin() + static_cast<std::ptrdiff_t>(offset + n));
        out.push_back(std::move(d));
        offset += n;
    }
    return out;
}

void Reassembler::push(Datagram datagram)
{
    if (datagram.payload.empty() || datagram.payload.size() > kMaxPayloadBytes) {
        throw Error(ErrorCode::PayloadTooLarge, "payload length must be in [1, 1456]");
    }
    auto [it, inserted] = by_seq_.try_emplace(datagram.seq, std::move(datagram));
    if (!inserted) {
        // try_emplace leaves the argument untouched when the key exists.
        if (it->second != datagram) {
            throw Error(ErrorCode::DuplicateSeq,
                        "seq " + std::to_string(datagram.seq) + " received twice with differing content");
        }
        ++duplicates_;
    }
}

Reassembled Reassembler::finish() const
{
    if (by_seq_.empty()) {
        throw Error(ErrorCode::EmptyInput, "no datagrams to reassemble");
    }
    Reassembled out;
    LossReport& report = out.report;
    const auto& last = by_seq_.rbegin()->second;
    out.stream.reserve(last.byte_count + last.payload.size());

    std::uint64_t next_seq = 0;
    std::uint64_t offset = 0;
    for (const auto& [seq, d] : by_seq_) {
        if (d.byte_count < offset) {
            throw Error(ErrorCode::NonMonotonicByteCount,
                        "seq " + std::to_string(seq) + " starts at byte " + std::to_string(d.byte_count) +
                            ", before end of previous payload at " + std::to_string(offset));
        }
        const std::uint64_t missing_bytes = d.byte_count - offset;
        const std::uint64_t missing_seqs = seq - next_seq;
        if (missing_seqs == 0 && missing_bytes != 0) {
            throw Error(ErrorCode::NonMonotonicByteCount,
                        "byte_count jumps by " + std::to_string(missing_bytes) + " at seq " +
                            std::to_string(seq) + " without a sequence gap");
        }
        if (missing_bytes < missing_seqs || missing_bytes > missing_seqs * kMaxPayloadBytes) {
            throw Error(ErrorCode::NonMonotonicByteCount,
                        "byte_count gap of " + std::to_string(missing_bytes) +
                            " bytes cannot hold " + std::to_string(missing_seqs) + " lost datagrams");
        }
        if (missing_seqs > 0) {
            report.gaps.push_back({static_cast<std::uint32_t>(next_seq),
                                   static_cast<std::uint32_t>(missing_seqs)});
            report.zero_filled_bytes += missing_bytes;
            out.stream.insert(out.stream.end(), missing_bytes, std::uint8_t{0});
        }
        out.stream.insert(out.stream.end(), d.payload.begin(), d.payload.end());
        offset = d.byte_count + d.payload.size();
        next_seq = std::uint64_t{seq} + 1;
    }
    report.expected_datagrams = next_seq;
    report.received = by_seq_.size();
    report.duplicates_dropped = duplicates_;
    return out;
}

Reassembled reassemble(std::span<const Datagram> datagrams)
{
    Reassembler r;
    for (const auto& d : datagrams) {
        r.push(d);
    }
    return r.finish();
}

std::vector<std::uint8_t> encode_stream(const RadarCube& cube)
{
    const auto& cfg = cube.config;
    std::vector<std::uint8_t> out;
    out.reserve(cube.frames * cfg.frame_bytes());
    const std::size_t rx = cfg.rx_channels;
    for (const auto& z : cube.data) {
        const auto i = static_cast<std::uint16_t>(quantize(z.real()));
        const auto q = static_cast<std::uint16_t>(quantize(z.imag()));
        for (std::size_t ch = 0; ch < rx; ++ch) {
            write_le(out, i, 2);
            write_le(out, q, 2);
        }
    }
    return out;
}

RadarCube decode_cube(std::span<const std::uint8_t> stream, const RadarConfig& config)
{
    validate(config);
    const std::uint64_t frame_bytes = config.frame_bytes();
    if (stream.size() % frame_bytes != 0) {
        throw Error(ErrorCode::TruncatedFrame,
                    std::to_string(stream.size()) + " bytes is not a whole number of " +
                        std::to_string(frame_bytes) + "-byte frames");
    }
    const std::size_t frames = stream.size() / frame_bytes;
    RadarCube cube(config, frames);
    const std::size_t stride = 4 * config.rx_channels;
    const std::uint8_t* p = stream.data();
    for (auto& z : cube.data) {
        const auto i = static_cast<std::int16_t>(read_le(p, 2));
        const auto q = static_cast<std::int16_t>(read_le(p + 2, 2));
        z = {static_cast<double>(i), static_cast<double>(q)};
        p += stride;
    }
    return cube;
}

RadarCube decode_cube(std::span<const std::uint8_t> stream, const RadarConfig& config,
                      std::size_t expected_frames)
{
    validate(config);
    const std::uint64_t want = expected_frames * config.frame_bytes();
    if (stream.size() != want) {
        throw Error(ErrorCode::LengthMismatch,
                    "stream has " + std::to_string(stream.size()) + " bytes, expected " +
                        std::to_string(want) + " for " + std::to_string(expected_frames) + " frames");
    }
    return decode_cube(stream, config);
}

std::vector<std::uint8_t> encode_capture(const RadarCube& cube)
{
    const auto& cfg = cube.config;
    validate(cfg);
    if (cube.data.size() != cube.frames * cfg.chirps_per_frame * cfg.samples_per_chirp ||
        cube.frame_timestamps.size() != cube.frames) {
        throw Error(ErrorCode::HeaderCubeMismatch, "cube dimensions do not match its config");
    }
    std::vector<std::uint8_t> out;
    out.reserve(kCaptureHeaderBytes + cube.frames * (cfg.frame_bytes() + 8));
    out.insert(out.end(), std::begin(kCaptureMagic), std::end(kCaptureMagic));
    write_le(out, kCaptureVersion, 2);
    write_f64(out, cfg.carrier_hz);
    write_f64(out, cfg.chirp_slope_hz_per_s);
    write_f64(out, cfg.adc_rate_hz);
    write_le(out, cfg.samples_per_chirp, 8);
    write_le(out, cfg.chirps_per_frame, 8);
    write_f64(out, cfg.frame_rate_hz);
    write_le(out, cfg.rx_channels, 8);
    write_f64(out, cfg.bandwidth_hz());
    write_le(out, cube.frames, 8);
    const auto stream = encode_stream(cube);
    out.insert(out.end(), stream.begin(), stream.end());
    for (double t : cube.frame_timestamps) {
        write_f64(out, t);
    }
    return out;
}

RadarCube decode_capture(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 4 || !std::equal(std::begin(kCaptureMagic), std::end(kCaptureMagic),
                                        reinterpret_cast<const char*>(bytes.data()))) {
        throw Error(ErrorCode::BadMagic, "capture does not start with \"RVSC\"");
    }
    if (bytes.size() < kCaptureHeaderBytes) {
        throw Error(ErrorCode::HeaderCubeMismatch, "capture header is truncated");
    }
    const std::uint8_t* p = bytes.data() + 4;
    const auto version = static_cast<std::uint16_t>(read_le(p, 2));
    if (version != kCaptureVersion) {
        throw Error(ErrorCode::UnsupportedVersion, "capture version " + std::to_string(version));
    }
    p += 2;
    RadarConfig cfg;
    cfg.carrier_hz = read_f64(p);
    cfg.chirp_slope_hz_per_s = read_f64(p + 8);
    cfg.adc_rate_hz = read_f64(p + 16);
    cfg.samples_per_chirp = read_le(p + 24, 8);
    cfg.chirps_per_frame = read_le(p + 32, 8);
    cfg.frame_rate_hz = read_f64(p + 40);
    cfg.rx_channels = read_le(p + 48, 8);
    const double bandwidth = read_f64(p + 56);
    const std::uint64_t frames = read_le(p + 64, 8);
    validate(cfg);
    if (std::abs(bandwidth - cfg.bandwidth_hz()) > 1e-9 * cfg.bandwidth_hz()) {
        throw Error(ErrorCode::HeaderCubeMismatch, "declared bandwidth disagrees with chirp geometry");
    }
    const std::uint64_t frame_bytes = cfg.frame_bytes();
    const std::uint64_t body = bytes.size() - kCaptureHeaderBytes;
    if (frames > body / (frame_bytes + 8) || body != frames * (frame_bytes + 8)) {
        throw Error(ErrorCode::HeaderCubeMismatch,
                    "header declares " + std::to_string(frames) + " frames but body holds " +
                        std::to_string(body) + " bytes");
    }
    const auto stream = bytes.subspan(kCaptureHeaderBytes, frames * frame_bytes);
    RadarCube cube = decode_cube(stream, cfg, frames);
    const std::uint8_t* ts = bytes.data() + kCaptureHeaderBytes + frames * frame_bytes;
    for (std::size_t f = 0; f < frames; ++f) {
        cube.frame_timestamps[f] = read_f64(ts + 8 * f);
    }
    for (std::size_t f = 1; f < frames; ++f) {
        if (!(cube.frame_timestamps[f] > cube.frame_timestamps[f - 1])) {
            throw Error(ErrorCode::HeaderCubeMismatch, "frame timestamps are not strictly increasing");
        }
    }
    if (frames >= 2) {
        const double mean_dt =
            (cube.frame_timestamps.back() - cube.frame_timestamps.front()) / static_cast<double>(frames - 1);
        if (std::abs(mean_dt * cfg.frame_rate_hz - 1.0) > 0.01) {
            throw Error(ErrorCode::HeaderCubeMismatch, "frame timestamps disagree with the frame rate");
        }
    }
    return cube;
}

RadarCube load_capture(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_capture(bytes);
}

void save_capture(const RadarCube& cube, const std::filesystem::path& path)
{
    const auto bytes = encode_capture(cube);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IoFailure, "cannot create " + path.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
    }
}

} // namespace radresp::ingest
