// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "radresp/fft.hpp"

#include "radresp/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

namespace radresp {

namespace {
// FFTW's planner is not re-entrant.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}
} // namespace

struct Fft::Impl {
    std::size_t n = 0;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan plan = nullptr;

    explicit Impl(std::size_t size) : n(size)
    {
        if (n == 0) {
            throw Error(ErrorCode::InvalidArgument, "FFT size must be positive");
        }
        in = fftw_alloc_complex(n);
        out = fftw_alloc_complex(n);
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    ~Impl()
    {
        {
            std::lock_guard lock(planner_mutex());
            fftw_destroy_plan(plan);
        }
        fftw_free(in);
        fftw_free(out);
    }
};

Fft::Fft(std::size_t size) : impl_(std::make_unique<Impl>(size)) {}
Fft::~Fft() = default;
Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

std::size_t Fft::size() const noexcept { return impl_->n; }

void Fft::forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out)
{
    const std::size_t n = impl_->n;
    if (in.size() > n || out.size() < n) {
        throw Error(ErrorCode::InvalidArgument, "FFT buffer size mismatch");
    }
    auto* buf = reinterpret_cast<std::complex<double>*>(impl_->in);
    std::copy(in.begin(), in.end(), buf);
    std::fill(buf + in.size(), buf + n, std::complex<double>{});
    fftw_execute(impl_->plan);
    const auto* res = reinterpret_cast<const std::complex<double>*>(impl_->out);
    std::copy(res, res + n, out.begin());
}

} // namespace radresp
