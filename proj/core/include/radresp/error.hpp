// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace radresp {

enum class ErrorCode {
    // ingest
    TooShort,
    PayloadTooLarge,
    EmptyInput,
    DuplicateSeq,
    NonMonotonicByteCount,
    TruncatedFrame,
    LengthMismatch,
    BadMagic,
    UnsupportedVersion,
    HeaderCubeMismatch,
    InvalidConfig,
    IoFailure,
    // radar-dsp
    EmptyCube,
    TooFewFrames,
    WindowEmpty,
    ZeroMagnitudeSample,
    AllZero,
    EmptySeries,
    // audio-dsp
    AudioTooShort,
    UnsupportedFormat,
    // spectral
    InvalidParams,
    TraceTooShort,
    EmptyBand,
    NoOverlap,
    // simulator
    DurationTooShort,
    InvalidScene,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for codes caused by malformed or inconsistent inputs (files, specs,
// parameters), as opposed to failures of the processing chain on valid data.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace radresp
