// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dwv {

enum class ErrorCode {
    InvalidArgument,
    UnknownCategory,
    AllZero,
    NegativeWeight,
    EmptyInput,
    AxisMismatch,
    EmptySelection,
    OutOfRange,
    MissingBaseline,
    UnknownCensusTable,
    InvalidWorldview,
    BackendUnavailable,
    InvalidRequest,
    PayloadUnreadable,
    NoFaceDetected,
    EmptyPrompt,
    UnknownSession,
    UnknownJob,
    UnknownImage,
    JobAlreadyRunning,
    ConfigError,
    IoError,
};

// Stable name used in HTTP error bodies and the C API.
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace dwv
