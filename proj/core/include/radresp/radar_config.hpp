// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#pragma once

#include <cstdint>

namespace radresp {

inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Chirp and frame geometry of the FMCW front end.
///
/// `carrier_hz` is the frequency at the centre of the chirp sweep; the
/// simulator and the range FFT both reference fast-time phase to that
/// instant, so a scatterer at range R carries slow-time phase 4*pi*R/wavelength().
struct RadarConfig {
    double carrier_hz = 77.0e9;
    double chirp_slope_hz_per_s = 60.0e12; // 60 MHz/us
    double adc_rate_hz = 5.0e6;
    std::uint64_t samples_per_chirp = 256;
    std::uint64_t chirps_per_frame = 1;
    double frame_rate_hz = 20.0;
    std::uint64_t rx_channels = 1;

    double bandwidth_hz() const noexcept
    {
        return chirp_slope_hz_per_s * static_cast<double>(samples_per_chirp) / adc_rate_hz;
    }
    double wavelength_m() const noexcept { return kSpeedOfLight / carrier_hz; }
    double bin_spacing_m() const noexcept { return kSpeedOfLight / (2.0 * bandwidth_hz()); }
    double chirp_duration_s() const noexcept
    {
        return static_cast<double>(samples_per_chirp) / adc_rate_hz;
    }
    double frame_period_s() const noexcept { return 1.0 / frame_rate_hz; }

    // Beat frequency of a scatterer at `range_m`.
    double beat_frequency_hz(double range_m) const noexcept
    {
        return 2.0 * chirp_slope_hz_per_s * range_m / kSpeedOfLight;
    }

    // Bytes of one frame on the wire: int16 I/Q for every rx channel.
    std::uint64_t frame_bytes() const noexcept
    {
        return chirps_per_frame * samples_per_chirp * rx_channels * 4;
    }

    bool operator==(const RadarConfig&) const = default;
};

/// Throws Error(InvalidConfig) when a rate or count is non-positive, the
/// active chirp time does not fit the frame period, or the derived axes are
/// not finite.
void validate(const RadarConfig& config);

} // namespace radresp
