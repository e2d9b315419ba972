// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

// Deterministic offline implementation of the backend wire contract.
//
//   generate: text k of a batch is "GEN(<h8>,<temperature %.2f>,<k>)" where h8
//             is the first 8 hex chars of SHA-256(prompt); with logprobs, the
//             token at whitespace-split position j gets -0.1 * (j + 1).
//   image:    candidate k is a 16x16 solid PNG whose RGB color is the first
//             3 bytes of SHA-256(prompt ∥ decimal(k)); the descriptor (the
//             prompt by default) is stored in a tEXt chunk named "prompt".
//   caption:  "a picture of " + descriptor, or the first 8 hex chars of the
//             asset id when the PNG has no descriptor.
//   embed:    64-dim bag of words: lowercase, split on non-alphanumerics,
//             +1.0 at FNV-1a(token) mod 64, then L2-normalize. Images embed
//             their descriptor, or their id when there is none.

#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "vcot/gateway.hpp"

namespace vcot {

inline constexpr int kMockEmbeddingDim = 64;

struct MockOptions {
  /// Overrides the generated text for (prompt, temperature, index in batch).
  std::function<std::string(std::string_view prompt, double temperature, int index)> text_fn;
  /// Overrides the descriptor stored in generated image k for a prompt.
  std::function<std::string(std::string_view prompt, int index)> image_descriptor_fn;
};

std::string mock_generated_text(std::string_view prompt, double temperature, int index);
std::vector<double> mock_token_logprobs(std::string_view text);
std::vector<double> mock_embed_text(std::string_view text);
Bytes mock_image_png(std::string_view prompt, int index, std::string_view descriptor);

class MockTransport final : public Transport {
 public:
  explicit MockTransport(MockOptions options = {}) : options_(std::move(options)) {}

  nlohmann::json post(std::string_view path, const std::string& body) override;
  std::uint64_t calls() const override { return calls_.load(); }

 private:
  nlohmann::json generate(const nlohmann::json& req) const;
  nlohmann::json image(const nlohmann::json& req) const;
  nlohmann::json caption(const nlohmann::json& req) const;
  nlohmann::json embed(const nlohmann::json& req) const;

  MockOptions options_;
  std::atomic<std::uint64_t> calls_{0};
};

/// A gateway whose four capabilities share one MockTransport.
Gateway make_mock_gateway(std::shared_ptr<ResponseCache> cache = nullptr, MockOptions options = {},
                          std::string profile_id = "mock");

}  // namespace vcot
