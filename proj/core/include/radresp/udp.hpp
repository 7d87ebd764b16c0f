// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#pragma once

#include "radresp/ingest.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace radresp::ingest {

/// Blocking UDP receiver for capture-card datagrams (IPv4).
class UdpListener {
public:
    /// Port 0 binds an ephemeral port; see port().
    explicit UdpListener(std::uint16_t port = kDefaultUdpPort, const std::string& bind_address = "0.0.0.0");
    ~UdpListener();
    UdpListener(const UdpListener&) = delete;
    UdpListener& operator=(const UdpListener&) = delete;

    std::uint16_t port() const noexcept { return port_; }

    /// Raw datagram bytes, or nullopt on timeout.
    std::optional<std::vector<std::uint8_t>> receive_raw(std::chrono::milliseconds timeout);

private:
    int fd_ = -1;
    std::uint16_t port_ = 0;
};

struct ListenResult {
    Reassembled reassembled;
    std::uint64_t malformed = 0; // datagrams rejected by parse_datagram
};

/// Receives until `max_datagrams` valid datagrams arrive or no datagram is
/// seen for `idle_timeout`, then reassembles. Throws EmptyInput when nothing
/// valid was received.
ListenResult listen_session(UdpListener& listener, std::uint64_t max_datagrams,
                            std::chrono::milliseconds idle_timeout);

/// Sends serialized datagrams to host:port, pacing by `gap` between sends.
void send_datagrams(std::span<const Datagram> datagrams, const std::string& host, std::uint16_t port,
                    std::chrono::microseconds gap = std::chrono::microseconds{0});

} // namespace radresp::ingest
