// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace radresp {

/// Forward complex DFT of a fixed length, X[k] = sum_n x[n] exp(-j 2 pi k n / N).
///
/// Owns its plan and aligned work buffers. Not thread-safe; use one instance
/// per thread.
class Fft {
public:
    explicit Fft(std::size_t size);
    ~Fft();
    Fft(Fft&&) noexcept;
    Fft& operator=(Fft&&) noexcept;
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    std::size_t size() const noexcept;

    // `in` may be shorter than size(); the tail is zero-padded.
    void forward(std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace radresp
