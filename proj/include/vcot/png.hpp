// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "vcot/hashing.hpp"

namespace vcot::png {

using Rgb = std::array<std::uint8_t, 3>;

struct ImageInfo {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  Rgb top_left{};                           // pixel (0, 0) as 8-bit RGB
  std::map<std::string, std::string> text;  // tEXt chunks
};

/// Encodes an 8-bit RGB image filled with one color. Each entry of `text`
/// becomes a tEXt chunk (keys must be 1..79 Latin-1 characters).
Bytes encode_solid(std::uint32_t width, std::uint32_t height, Rgb color,
                   const std::map<std::string, std::string>& text = {});

/// Fully decodes the image. Returns nullopt for anything libpng rejects.
std::optional<ImageInfo> inspect(std::span<const std::uint8_t> data);

inline bool is_valid(std::span<const std::uint8_t> data) { return inspect(data).has_value(); }

}  // namespace vcot::png
