// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

// Request bodies of the four backend endpoints. Every body is canonical
// JSON: sorted keys, no insignificant whitespace, UTF-8.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace vcot::wire {

inline constexpr std::string_view kGeneratePath = "/v1/generate";
inline constexpr std::string_view kImagePath = "/v1/image";
inline constexpr std::string_view kCaptionPath = "/v1/caption";
inline constexpr std::string_view kEmbedPath = "/v1/embed";

struct GenerateRequest {
  std::string prompt;
  double temperature = 0.0;
  int n = 1;
  int max_tokens = 256;
  bool logprobs = false;
  std::int64_t seed = 0;
};

struct ImageRequest {
  std::string prompt;
  int n = 1;
  std::int64_t seed = 0;
};

struct CaptionRequest {
  std::string png_base64;
};

struct EmbedInput {
  enum class Kind { text, image } kind = Kind::text;
  std::string payload;  // the text, or the base64 PNG
};

struct EmbedRequest {
  std::vector<EmbedInput> inputs;
};

nlohmann::json to_json(const GenerateRequest& r);
nlohmann::json to_json(const ImageRequest& r);
nlohmann::json to_json(const CaptionRequest& r);
nlohmann::json to_json(const EmbedRequest& r);

/// Serializes without whitespace; nlohmann's object type keeps keys sorted.
std::string canonical(const nlohmann::json& j);

}  // namespace vcot::wire
