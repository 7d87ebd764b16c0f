// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#pragma once

#include "radresp/radar_config.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace radresp {

/// Decoded beat-signal capture for a single rx channel, stored frame-major:
/// data[(frame * chirps_per_frame + chirp) * samples_per_chirp + sample].
struct RadarCube {
    RadarConfig config;
    std::size_t frames = 0;
    std::vector<std::complex<double>> data;
    std::vector<double> frame_timestamps; // seconds from capture start

    RadarCube() = default;
    RadarCube(const RadarConfig& cfg, std::size_t frame_count)
        : config(cfg),
          frames(frame_count),
          data(frame_count * cfg.chirps_per_frame * cfg.samples_per_chirp),
          frame_timestamps(frame_count)
    {
        for (std::size_t f = 0; f < frame_count; ++f) {
            frame_timestamps[f] = static_cast<double>(f) / cfg.frame_rate_hz;
        }
    }

    bool empty() const noexcept { return frames == 0; }
    std::size_t chirps() const noexcept { return config.chirps_per_frame; }
    std::size_t samples() const noexcept { return config.samples_per_chirp; }

    std::complex<double>& at(std::size_t frame, std::size_t chirp, std::size_t sample)
    {
        return data[(frame * chirps() + chirp) * samples() + sample];
    }
    const std::complex<double>& at(std::size_t frame, std::size_t chirp, std::size_t sample) const
    {
        return data[(frame * chirps() + chirp) * samples() + sample];
    }

    std::span<const std::complex<double>> chirp(std::size_t frame, std::size_t c) const
    {
        return {data.data() + (frame * chirps() + c) * samples(), samples()};
    }

    bool operator==(const RadarCube&) const = default;
};

} // namespace radresp
