// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "radresp/radar_config.hpp"

#include "radresp/error.hpp"

#include <cmath>
#include <string>

namespace radresp {

void validate(const RadarConfig& config)
{
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(config.carrier_hz) || !positive(config.chirp_slope_hz_per_s) ||
        !positive(config.adc_rate_hz) || !positive(config.frame_rate_hz)) {
        throw Error(ErrorCode::InvalidConfig, "rates must be finite and strictly positive");
    }
    if (config.samples_per_chirp == 0 || config.chirps_per_frame == 0 || config.rx_channels == 0) {
        throw Error(ErrorCode::InvalidConfig, "counts must be strictly positive");
    }
    // 2^32 bytes per frame is far beyond any capture card and keeps frame_bytes() exact.
    const double frame_bytes = 4.0 * static_cast<double>(config.samples_per_chirp) *
                               static_cast<double>(config.chirps_per_frame) * static_cast<double>(config.rx_channels);
    if (frame_bytes > 4294967296.0) {
        throw Error(ErrorCode::InvalidConfig, "frame size exceeds 4 GiB");
    }
    const double active = config.chirp_duration_s() * static_cast<double>(config.chirps_per_frame);
    if (config.frame_rate_hz * active > 1.0) {
        throw Error(ErrorCode::InvalidConfig,
                    "chirps do not fit the frame period (" + std::to_string(active) + " s active)");
    }
    if (!positive(config.wavelength_m()) || !positive(config.bin_spacing_m())) {
        throw Error(ErrorCode::InvalidConfig, "derived wavelength or bin spacing is not positive");
    }
}

} // namespace radresp
