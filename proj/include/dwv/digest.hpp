// Copyright 2026 The dwv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace dwv {

/// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

std::string base64_encode(std::string_view bytes);
/// Throws InvalidRequest on malformed input.
std::string base64_decode(std::string_view text);

/// Random 128-bit identifier as 32 hex characters.
std::string random_id();

/// Current UTC time, ISO-8601 with millisecond precision.
std::string utc_timestamp();

}  // namespace dwv
