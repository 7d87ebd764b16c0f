// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

// Reference implementations used only by tests. They share no code with the
// library: plain loops, textbook formulas, no FFT.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace oracle {

inline constexpr double kC = 299792458.0;
inline constexpr double kPi = std::numbers::pi;

// Frozen reference values (77 GHz carrier, 60 MHz/us slope, 5 MHz ADC, 256 samples).
inline constexpr double kWavelength77GHz = 0.0038934085454545454;
inline constexpr double kBinSpacingDefault = 0.048794345377604166;
inline constexpr double kPhasePeak1mm = 3.2276013338055902;

inline double phase_of_displacement(double d_m, double wavelength_m) { return 4.0 * kPi * d_m / wavelength_m; }

// Direct DFT bin k of x, X[k] = sum x[n] exp(-j 2 pi k n / N).
inline std::complex<double> dft_bin(std::span<const std::complex<double>> x, double k)
{
    std::complex<double> acc{};
    const double n_total = static_cast<double>(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) {
        acc += x[n] * std::polar(1.0, -2.0 * kPi * k * static_cast<double>(n) / n_total);
    }
    return acc;
}

inline std::vector<double> hann(std::size_t n)
{
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = std::sin(kPi * static_cast<double>(i) / static_cast<double>(n - 1));
        w[i] = s * s;
    }
    return w;
}

inline std::vector<double> blackman(std::size_t n)
{
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n - 1);
        w[i] = std::max(0.0, 0.42 - 0.5 * std::cos(x) + 0.08 * std::cos(2.0 * x));
    }
    return w;
}

// Power series for the zeroth-order modified Bessel function.
inline double bessel_i0(double x)
{
    double sum = 1.0;
    double term = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= (x / (2.0 * k)) * (x / (2.0 * k));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

inline double kaiser_beta_60db() { return 0.1102 * (60.0 - 8.7); }

// |H(f)| in dB by direct summation.
inline double response_db(std::span<const double> h, double f_hz, double fs_hz)
{
    std::complex<double> acc{};
    for (std::size_t k = 0; k < h.size(); ++k) {
        acc += h[k] * std::polar(1.0, -2.0 * kPi * f_hz / fs_hz * static_cast<double>(k));
    }
    return 20.0 * std::log10(std::max(std::abs(acc), 1e-300));
}

// Least-squares line removal.
inline std::vector<double> detrend(std::span<const double> y)
{
    const double n = static_cast<double>(y.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double x = static_cast<double>(i);
        sx += x;
        sy += y[i];
        sxx += x * x;
        sxy += x * y[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / n;
    std::vector<double> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        out[i] = y[i] - (icpt + slope * static_cast<double>(i));
    }
    return out;
}

inline double rms(std::span<const double> v)
{
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc / static_cast<double>(v.size()));
}

inline double rms_diff(std::span<const double> a, std::span<const double> b)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(acc / static_cast<double>(a.size()));
}

// Little-endian datagram header written byte by byte.
inline std::vector<std::uint8_t> datagram_bytes(std::uint32_t seq, std::uint64_t byte_count,
                                                const std::vector<std::uint8_t>& payload)
{
    std::vector<std::uint8_t> out;
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(seq >> (8 * i)));
    for (int i = 0; i < 6; ++i) out.push_back(static_cast<std::uint8_t>(byte_count >> (8 * i)));
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("radresp_" + tag + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& leaf) const { return path_ / leaf; }

private:
    std::filesystem::path path_;
};

} // namespace oracle
