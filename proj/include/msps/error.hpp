// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MSPS_ERROR_HPP
#define MSPS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace msps {

enum class ErrorCode {
    InvalidArgument,
    FileNotFound,
    Io,
    MalformedPng,
    UnsupportedPng,
    DimensionMismatch,
    ChannelMismatch,
    UnsupportedSvg,
    MalformedSvg,
    UnknownTemplate,
    Parse,
};

const char* error_code_name(ErrorCode code) noexcept;

// Every failure raised by the library carries a code so callers (and the C
// API) can tell e.g. a missing file from a malformed one.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace msps

#endif  // MSPS_ERROR_HPP
