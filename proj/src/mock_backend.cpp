// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include "vcot/mock_backend.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

#include "vcot/errors.hpp"
#include "vcot/png.hpp"

namespace vcot {

using nlohmann::json;

namespace {

constexpr std::uint32_t kMockImageSide = 16;
constexpr const char* kDescriptorKey = "prompt";

std::vector<std::string_view> whitespace_tokens(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) out.push_back(text.substr(start, i - start));
  }
  return out;
}

std::string image_descriptor(const Bytes& png_bytes, bool& has_descriptor) {
  auto info = png::inspect(png_bytes);
  if (!info) throw InputError("mock: invalid PNG payload");
  if (auto it = info->text.find(kDescriptorKey); it != info->text.end()) {
    has_descriptor = true;
    return it->second;
  }
  has_descriptor = false;
  return sha256_hex(png_bytes);
}

}  // namespace

std::string mock_generated_text(std::string_view prompt, double temperature, int index) {
  char temp[32];
  std::snprintf(temp, sizeof temp, "%.2f", temperature);
  return "GEN(" + sha256_hex(prompt).substr(0, 8) + "," + temp + "," + std::to_string(index) + ")";
}

std::vector<double> mock_token_logprobs(std::string_view text) {
  const auto tokens = whitespace_tokens(text);
  std::vector<double> out(tokens.size());
  for (std::size_t k = 0; k < tokens.size(); ++k) out[k] = -0.1 * static_cast<double>(k + 1);
  return out;
}

std::vector<double> mock_embed_text(std::string_view text) {
  std::vector<double> v(kMockEmbeddingDim, 0.0);
  std::string token;
  auto flush = [&] {
    if (!token.empty()) v[fnv1a32(token) % kMockEmbeddingDim] += 1.0;
    token.clear();
  };
  for (unsigned char c : text) {
    if (c < 0x80 && std::isalnum(c))
      token.push_back(static_cast<char>(std::tolower(c)));
    else
      flush();
  }
  flush();
  double norm = 0.0;
  for (double x : v) norm += x * x;
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  return v;
}

Bytes mock_image_png(std::string_view prompt, int index, std::string_view descriptor) {
  const auto digest = sha256(std::string(prompt) + std::to_string(index));
  return png::encode_solid(kMockImageSide, kMockImageSide, {digest[0], digest[1], digest[2]},
                           {{kDescriptorKey, std::string(descriptor)}});
}

json MockTransport::post(std::string_view path, const std::string& body) {
  ++calls_;
  json req;
  try {
    req = json::parse(body);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("mock: unparsable request: ") + e.what());
  }
  if (path == wire::kGeneratePath) return generate(req);
  if (path == wire::kImagePath) return image(req);
  if (path == wire::kCaptionPath) return caption(req);
  if (path == wire::kEmbedPath) return embed(req);
  throw ProtocolError("mock: unknown endpoint " + std::string(path));
}

json MockTransport::generate(const json& req) const {
  const auto prompt = req.at("prompt").get<std::string>();
  const double temperature = req.at("temperature").get<double>();
  const int n = req.at("n").get<int>();
  const bool logprobs = req.at("logprobs").get<bool>();
  json choices = json::array();
  for (int k = 0; k < n; ++k) {
    std::string text = options_.text_fn ? options_.text_fn(prompt, temperature, k)
                                        : mock_generated_text(prompt, temperature, k);
    json choice{{"text", text}, {"token_logprobs", nullptr}};
    if (logprobs) choice["token_logprobs"] = mock_token_logprobs(text);
    choices.push_back(std::move(choice));
  }
  return json{{"choices", std::move(choices)}};
}

json MockTransport::image(const json& req) const {
  const auto prompt = req.at("prompt").get<std::string>();
  const int n = req.at("n").get<int>();
  json images = json::array();
  for (int k = 0; k < n; ++k) {
    const std::string descriptor = options_.image_descriptor_fn ? options_.image_descriptor_fn(prompt, k) : prompt;
    images.push_back({{"png_base64", base64_encode(mock_image_png(prompt, k, descriptor))}});
  }
  return json{{"images", std::move(images)}};
}

json MockTransport::caption(const json& req) const {
  const Bytes png = base64_decode(req.at("png_base64").get<std::string>());
  bool has_descriptor = false;
  std::string d = image_descriptor(png, has_descriptor);
  return json{{"caption", "a picture of " + (has_descriptor ? d : d.substr(0, 8))}};
}

json MockTransport::embed(const json& req) const {
  json vectors = json::array();
  for (const auto& in : req.at("inputs")) {
    const auto kind = in.at("kind").get<std::string>();
    if (kind == "text") {
      vectors.push_back(mock_embed_text(in.at("text").get<std::string>()));
    } else if (kind == "image") {
      bool has_descriptor = false;
      vectors.push_back(
          mock_embed_text(image_descriptor(base64_decode(in.at("png_base64").get<std::string>()), has_descriptor)));
    } else {
      throw ProtocolError("mock: unknown embed kind " + kind);
    }
  }
  return json{{"dim", kMockEmbeddingDim}, {"embeddings", std::move(vectors)}};
}

Gateway make_mock_gateway(std::shared_ptr<ResponseCache> cache, MockOptions options, std::string profile_id) {
  auto t = std::make_shared<MockTransport>(std::move(options));
  return Gateway(BackendProfile::mock(std::move(profile_id)), {t, t, t, t}, std::move(cache));
}

}  // namespace vcot
