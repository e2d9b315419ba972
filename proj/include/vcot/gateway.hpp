// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vcot/types.hpp"
#include "vcot/wire.hpp"

namespace vcot {

/// Designator used in BackendProfile endpoints to select the offline mock.
inline constexpr std::string_view kMockEndpoint = "mock";

struct BackendProfile {
  std::string id = "mock";
  std::string text_endpoint{kMockEndpoint};
  std::string image_endpoint{kMockEndpoint};
  std::string caption_endpoint{kMockEndpoint};
  std::string embed_endpoint{kMockEndpoint};
  double default_temperature = 0.0;
  int retry_limit = 3;
  std::chrono::duration<double> timeout{60.0};
  std::chrono::milliseconds backoff_base{200};
  std::optional<int> embed_dim;  // declared D; taken from the first response when unset
  std::optional<std::string> bearer_token;

  void validate() const;
  static BackendProfile mock(std::string id = "mock");
};

struct TextGeneration {
  std::string text;
  std::optional<std::vector<double>> token_logprobs;
  double temperature = 0.0;
  int candidate_index = 0;
};

enum class EmbeddingKind { text, image };

struct Embedding {
  std::vector<double> vector;
  EmbeddingKind kind = EmbeddingKind::text;
};

/// Cosine similarity. Throws StructuralError on dimension mismatch and
/// UndefinedSimilarity when either vector is zero.
double cosine(std::span<const double> a, std::span<const double> b);
inline double cosine(const Embedding& a, const Embedding& b) { return cosine(a.vector, b.vector); }

/// One POST endpoint family. Implementations must be safe for concurrent use.
class Transport {
 public:
  virtual ~Transport() = default;
  /// Sends `body` to `path` and returns the parsed response.
  virtual nlohmann::json post(std::string_view path, const std::string& body) = 0;
  /// Number of logical backend invocations served so far.
  virtual std::uint64_t calls() const = 0;
};

/// Content-addressed response store, optionally persisted under a directory
/// as one `<key>.json` file per entry.
class ResponseCache {
 public:
  ResponseCache() = default;
  explicit ResponseCache(std::filesystem::path dir);

  static std::string make_key(std::string_view profile_id, std::string_view endpoint_name,
                              std::string_view canonical_request);

  /// Returns the cached response, or runs `fetch`, stores, and returns it.
  /// Concurrent callers with the same key invoke `fetch` at most once.
  nlohmann::json get_or_fetch(const std::string& key, const std::function<nlohmann::json()>& fetch);

  std::optional<nlohmann::json> lookup(const std::string& key);
  void clear();
  std::size_t size() const;
  std::uint64_t evictions() const noexcept { return evictions_.load(); }
  const std::optional<std::filesystem::path>& directory() const noexcept { return dir_; }

 private:
  std::optional<nlohmann::json> load_locked(const std::string& key);
  void store_locked(const std::string& key, const nlohmann::json& response);
  std::shared_ptr<std::mutex> key_mutex(const std::string& key);

  std::optional<std::filesystem::path> dir_;
  mutable std::mutex mu_;
  std::map<std::string, nlohmann::json> memory_;
  std::map<std::string, std::shared_ptr<std::mutex>> key_locks_;
  std::atomic<std::uint64_t> evictions_{0};
};

/// Cache-through call: key = SHA-256(profile.id ∥ endpoint_name ∥ request).
/// A fresh response is stored only after `validate` returns without throwing.
nlohmann::json cached_call(ResponseCache& cache, std::string_view profile_id, std::string_view endpoint_name,
                           const std::string& canonical_request, Transport& transport,
                           const std::function<void(const nlohmann::json&)>& validate = {});

struct EmbedItem {
  EmbeddingKind kind;
  std::string payload;  // text, or base64 PNG

  static EmbedItem text(std::string s) { return {EmbeddingKind::text, std::move(s)}; }
  static EmbedItem image(const VisualAsset& asset);
};

/// Uniform access to text generation, image generation, captioning and
/// embedding. Every call goes through the response cache.
class Gateway {
 public:
  struct Transports {
    std::shared_ptr<Transport> text, image, caption, embed;
  };

  Gateway(BackendProfile profile, Transports transports, std::shared_ptr<ResponseCache> cache);

  /// Builds transports from the profile's endpoint designators.
  static Gateway from_profile(BackendProfile profile, std::shared_ptr<ResponseCache> cache);

  std::vector<TextGeneration> generate_text(std::string_view prompt, double temperature, int n, bool want_logprobs,
                                            int max_tokens = 256, std::int64_t seed = 0);
  std::vector<VisualAsset> generate_image(std::string_view prompt, int n, std::int64_t seed);
  std::string caption_image(const VisualAsset& asset);
  std::vector<Embedding> embed(std::span<const EmbedItem> items);

  const BackendProfile& profile() const noexcept { return profile_; }
  ResponseCache& cache() noexcept { return *cache_; }
  /// Backend invocations across the distinct transports (cache hits excluded).
  std::uint64_t backend_calls() const;
  /// Embedding dimension observed or declared, 0 if none yet.
  int embedding_dim() const noexcept { return dim_.load(); }

 private:
  /// Parses the response of one cached call. `parse` runs before a fresh
  /// response is cached, so responses it rejects are never stored.
  template <typename Parse>
  auto call(Transport& t, std::string_view path, const nlohmann::json& request, Parse&& parse)
      -> decltype(parse(std::declval<const nlohmann::json&>()));

  BackendProfile profile_;
  Transports transports_;
  std::shared_ptr<ResponseCache> cache_;
  std::atomic<int> dim_{0};
};

}  // namespace vcot
