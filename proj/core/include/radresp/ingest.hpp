// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#pragma once

#include "radresp/radar_config.hpp"
#include "radresp/radar_cube.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <vector>

namespace radresp::ingest {

// Wire format: u32 seq (LE), u48 cumulative byte count (LE), payload.
inline constexpr std::size_t kHeaderBytes = 10;
inline constexpr std::size_t kMaxPayloadBytes = 1456;
inline constexpr std::uint64_t kMaxByteCount = (std::uint64_t{1} << 48) - 1;
inline constexpr std::uint16_t kDefaultUdpPort = 4098;

// Capture container.
inline constexpr char kCaptureMagic[4] = {'R', 'V', 'S', 'C'};
inline constexpr std::uint16_t kCaptureVersion = 1;
inline constexpr std::size_t kCaptureHeaderBytes = 4 + 2 + 8 * 8 + 8;

struct Datagram {
    std::uint32_t seq = 0;
    std::uint64_t byte_count = 0;
    std::vector<std::uint8_t> payload;

    bool operator==(const Datagram&) const = default;
};

/// Total parser: returns a Datagram or throws Error(TooShort | PayloadTooLarge).
Datagram parse_datagram(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> serialize(const Datagram& datagram);

/// Splits a byte stream into consecutive datagrams starting at seq 0.
std::vector<Datagram> chunk_stream(std::span<const std::uint8_t> stream,
                                   std::size_t payload_bytes = kMaxPayloadBytes);

struct Gap {
    std::uint32_t first_missing_seq = 0;
    std::uint32_t length = 0;

    bool operator==(const Gap&) const = default;
};

struct LossReport {
    std::uint64_t expected_datagrams = 0;
    std::uint64_t received = 0;
    std::vector<Gap> gaps;
    std::uint64_t zero_filled_bytes = 0;
    std::uint64_t duplicates_dropped = 0;
};

struct Reassembled {
    std::vector<std::uint8_t> stream;
    LossReport report;
};

/// Single-consumer reassembly stage. Datagrams may arrive in any order;
/// exact duplicates are dropped, conflicting duplicates are rejected.
class Reassembler {
public:
    void push(Datagram datagram);
    std::size_t pending() const noexcept { return by_seq_.size(); }

    /// Concatenates payloads in seq order, zero-filling the byte ranges of
    /// missing datagrams. Throws EmptyInput or NonMonotonicByteCount.
    Reassembled finish() const;

private:
    std::map<std::uint32_t, Datagram> by_seq_;
    std::uint64_t duplicates_ = 0;
};

Reassembled reassemble(std::span<const Datagram> datagrams);

/// int16 I/Q, little-endian, [frame][chirp][sample][rx]. Values are rounded
/// and saturated to int16; channel 0 is replicated to every rx channel.
std::vector<std::uint8_t> encode_stream(const RadarCube& cube);

/// Inverse of encode_stream, selecting rx channel 0. Throws TruncatedFrame
/// when the stream is not a whole number of frames.
RadarCube decode_cube(std::span<const std::uint8_t> stream, const RadarConfig& config);

/// As above, additionally requiring exactly `expected_frames` frames
/// (LengthMismatch otherwise).
RadarCube decode_cube(std::span<const std::uint8_t> stream, const RadarConfig& config,
                      std::size_t expected_frames);

std::vector<std::uint8_t> encode_capture(const RadarCube& cube);
RadarCube decode_capture(std::span<const std::uint8_t> bytes);

RadarCube load_capture(const std::filesystem::path& path);
void save_capture(const RadarCube& cube, const std::filesystem::path& path);

} // namespace radresp::ingest
