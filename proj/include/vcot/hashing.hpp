// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vcot {

using Bytes = std::vector<std::uint8_t>;
using Sha256Digest = std::array<std::uint8_t, 32>;

Sha256Digest sha256(std::span<const std::uint8_t> data);
Sha256Digest sha256(std::string_view data);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::span<const std::uint8_t> data);
std::string sha256_hex(std::string_view data);

std::string to_hex(std::span<const std::uint8_t> data);

/// 32-bit FNV-1a.
std::uint32_t fnv1a32(std::string_view data) noexcept;

std::string base64_encode(std::span<const std::uint8_t> data);
/// Throws InputError on malformed input.
Bytes base64_decode(std::string_view text);

}  // namespace vcot
