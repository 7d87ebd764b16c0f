// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "radresp/udp.hpp"

#include "radresp/error.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

namespace radresp::ingest {

namespace {

sockaddr_in make_address(const std::string& host, std::uint16_t port)
{
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        throw Error(ErrorCode::InvalidArgument, "not an IPv4 address: " + host);
    }
    return addr;
}

[[noreturn]] void throw_errno(const std::string& what)
{
    throw Error(ErrorCode::IoFailure, what + ": " + std::strerror(errno));
}

} // namespace

UdpListener::UdpListener(std::uint16_t port, const std::string& bind_address)
{
    const sockaddr_in addr = make_address(bind_address, port);
    fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
    if (fd_ < 0) {
        throw_errno("socket");
    }
    // Large receive buffer: the capture card bursts at line rate.
    int rcvbuf = 8 << 20;
    ::setsockopt(fd_, SOL_SOCKET, SO_RCVBUF, &rcvbuf, sizeof(rcvbuf));
    if (::bind(fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
        const int saved = errno;
        ::close(fd_);
        errno = saved;
        throw_errno("bind to port " + std::to_string(port));
    }
    sockaddr_in bound{};
    socklen_t len = sizeof(bound);
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
    port_ = ntohs(bound.sin_port);
}

UdpListener::~UdpListener()
{
    if (fd_ >= 0) {
        ::close(fd_);
    }
}

std::optional<std::vector<std::uint8_t>> UdpListener::receive_raw(std::chrono::milliseconds timeout)
{
    pollfd pfd{fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
    if (ready < 0) {
        throw_errno("poll");
    }
    if (ready == 0) {
        return std::nullopt;
    }
    std::vector<std::uint8_t> buf(65536);
    const ssize_t n = ::recv(fd_, buf.data(), buf.size(), 0);
    if (n < 0) {
        throw_errno("recv");
    }
    buf.resize(static_cast<std::size_t>(n));
    return buf;
}

ListenResult listen_session(UdpListener& listener, std::uint64_t max_datagrams,
                            std::chrono::milliseconds idle_timeout)
{
    Reassembler reassembler;
    ListenResult result;
    std::uint64_t valid = 0;
    while (valid < max_datagrams) {
        auto raw = listener.receive_raw(idle_timeout);
        if (!raw) {
            break;
        }
        try {
            reassembler.push(parse_datagram(*raw));
            ++valid;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TooShort && e.code() != ErrorCode::PayloadTooLarge) {
                throw;
            }
            ++result.malformed;
        }
    }
    result.reassembled = reassembler.finish();
    return result;
}

void send_datagrams(std::span<const Datagram> datagrams, const std::string& host, std::uint16_t port,
                    std::chrono::microseconds gap)
{
    const sockaddr_in addr = make_address(host, port);
    const int fd = ::socket(AF_INET, SOCK_DGRAM, 0);
    if (fd < 0) {
        throw_errno("socket");
    }
    for (const auto& d : datagrams) {
        const auto bytes = serialize(d);
        const ssize_t n = ::sendto(fd, bytes.data(), bytes.size(), 0,
                                   reinterpret_cast<const sockaddr*>(&addr), sizeof(addr));
        if (n < 0) {
            const int saved = errno;
            ::close(fd);
            errno = saved;
            throw_errno("sendto");
        }
        if (gap.count() > 0) {
            std::this_thread::sleep_for(gap);
        }
    }
    ::close(fd);
}

} // namespace radresp::ingest
