// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "radresp/error.hpp"

namespace radresp {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::PayloadTooLarge: return "PayloadTooLarge";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DuplicateSeq: return "DuplicateSeq";
    case ErrorCode::NonMonotonicByteCount: return "NonMonotonicByteCount";
    case ErrorCode::TruncatedFrame: return "TruncatedFrame";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::HeaderCubeMismatch: return "HeaderCubeMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::EmptyCube: return "EmptyCube";
    case ErrorCode::TooFewFrames: return "TooFewFrames";
    case ErrorCode::WindowEmpty: return "WindowEmpty";
    case ErrorCode::ZeroMagnitudeSample: return "ZeroMagnitudeSample";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::AudioTooShort: return "AudioTooShort";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::TraceTooShort: return "TraceTooShort";
    case ErrorCode::EmptyBand: return "EmptyBand";
    case ErrorCode::NoOverlap: return "NoOverlap";
    case ErrorCode::DurationTooShort: return "DurationTooShort";
    case ErrorCode::InvalidScene: return "InvalidScene";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::TooShort:
    case ErrorCode::PayloadTooLarge:
    case ErrorCode::EmptyInput:
    case ErrorCode::DuplicateSeq:
    case ErrorCode::NonMonotonicByteCount:
    case ErrorCode::TruncatedFrame:
    case ErrorCode::LengthMismatch:
    case ErrorCode::BadMagic:
    case ErrorCode::UnsupportedVersion:
    case ErrorCode::HeaderCubeMismatch:
    case ErrorCode::InvalidConfig:
    case ErrorCode::IoFailure:
    case ErrorCode::UnsupportedFormat:
    case ErrorCode::InvalidParams:
    case ErrorCode::DurationTooShort:
    case ErrorCode::InvalidScene:
    case ErrorCode::InvalidArgument:
        return true;
    default:
        return false;
    }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

} // namespace radresp
