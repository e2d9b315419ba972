// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include "vcot/gateway.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "vcot/errors.hpp"
#include "vcot/http_transport.hpp"
#include "vcot/mock_backend.hpp"
#include "vcot/png.hpp"

namespace vcot {

using nlohmann::json;
namespace fs = std::filesystem;

void BackendProfile::validate() const {
  if (id.empty()) throw PreconditionError("backend profile id is empty");
  if (retry_limit < 0) throw PreconditionError("retry_limit must be >= 0");
  if (timeout.count() <= 0) throw PreconditionError("timeout must be positive");
}

BackendProfile BackendProfile::mock(std::string id) {
  BackendProfile p;
  p.id = std::move(id);
  p.embed_dim = kMockEmbeddingDim;
  return p;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw StructuralError("cosine: dimension mismatch " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw UndefinedSimilarity("cosine of a zero vector");
  // sqrt(na * nb) is symmetric in (a, b), so cosine(a, b) == cosine(b, a) bit for bit.
  const double c = dot / std::sqrt(na * nb);
  return std::clamp(c, -1.0, 1.0);
}

// ---------------------------------------------------------------- cache

ResponseCache::ResponseCache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(*dir_); }

std::string ResponseCache::make_key(std::string_view profile_id, std::string_view endpoint_name,
                                    std::string_view canonical_request) {
  std::string material;
  material.reserve(profile_id.size() + endpoint_name.size() + canonical_request.size());
  material.append(profile_id).append(endpoint_name).append(canonical_request);
  return sha256_hex(material);
}

std::shared_ptr<std::mutex> ResponseCache::key_mutex(const std::string& key) {
  std::lock_guard lock(mu_);
  auto& slot = key_locks_[key];
  if (!slot) slot = std::make_shared<std::mutex>();
  return slot;
}

std::optional<json> ResponseCache::load_locked(const std::string& key) {
  {
    std::lock_guard lock(mu_);
    if (auto it = memory_.find(key); it != memory_.end()) return it->second;
  }
  if (!dir_) return std::nullopt;
  const fs::path file = *dir_ / (key + ".json");
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  in.close();
  try {
    json entry = json::parse(ss.str());
    json response = entry.at("response");
    if (entry.at("sha256").get<std::string>() != sha256_hex(wire::canonical(response)))
      throw std::runtime_error("checksum mismatch");
    std::lock_guard lock(mu_);
    memory_[key] = response;
    return response;
  } catch (const std::exception&) {
    std::error_code ec;
    fs::remove(file, ec);
    ++evictions_;
    return std::nullopt;
  }
}

void ResponseCache::store_locked(const std::string& key, const json& response) {
  {
    std::lock_guard lock(mu_);
    memory_[key] = response;
  }
  if (!dir_) return;
  json entry{{"response", response}, {"sha256", sha256_hex(wire::canonical(response))}};
  const fs::path file = *dir_ / (key + ".json");
  const fs::path tmp = *dir_ / (key + ".json.tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << wire::canonical(entry);
  }
  fs::rename(tmp, file);
}

json ResponseCache::get_or_fetch(const std::string& key, const std::function<json()>& fetch) {
  auto km = key_mutex(key);
  std::lock_guard lock(*km);
  if (auto hit = load_locked(key)) return *hit;
  json response = fetch();
  store_locked(key, response);
  return response;
}

std::optional<json> ResponseCache::lookup(const std::string& key) {
  auto km = key_mutex(key);
  std::lock_guard lock(*km);
  return load_locked(key);
}

void ResponseCache::clear() {
  std::lock_guard lock(mu_);
  memory_.clear();
  if (dir_) {
    for (const auto& e : fs::directory_iterator(*dir_))
      if (e.path().extension() == ".json") fs::remove(e.path());
  }
}

std::size_t ResponseCache::size() const {
  std::lock_guard lock(mu_);
  return memory_.size();
}

json cached_call(ResponseCache& cache, std::string_view profile_id, std::string_view endpoint_name,
                 const std::string& canonical_request, Transport& transport,
                 const std::function<void(const json&)>& validate) {
  const std::string key = ResponseCache::make_key(profile_id, endpoint_name, canonical_request);
  return cache.get_or_fetch(key, [&] {
    json response = transport.post(endpoint_name, canonical_request);
    if (validate) validate(response);
    return response;
  });
}

// -------------------------------------------------------------- gateway

EmbedItem EmbedItem::image(const VisualAsset& asset) {
  return {EmbeddingKind::image, base64_encode(asset.png_bytes())};
}

Gateway::Gateway(BackendProfile profile, Transports transports, std::shared_ptr<ResponseCache> cache)
    : profile_(std::move(profile)), transports_(std::move(transports)), cache_(std::move(cache)) {
  profile_.validate();
  if (!transports_.text || !transports_.image || !transports_.caption || !transports_.embed)
    throw PreconditionError("gateway: every capability needs a transport");
  if (!cache_) cache_ = std::make_shared<ResponseCache>();
  if (profile_.embed_dim) dim_ = *profile_.embed_dim;
}

Gateway Gateway::from_profile(BackendProfile profile, std::shared_ptr<ResponseCache> cache) {
  profile.validate();
  std::shared_ptr<Transport> mock;
  std::map<std::string, std::shared_ptr<Transport>> http;
  auto resolve = [&](const std::string& endpoint) -> std::shared_ptr<Transport> {
    if (endpoint == kMockEndpoint) {
      if (!mock) mock = std::make_shared<MockTransport>();
      return mock;
    }
    auto& t = http[endpoint];
    if (!t) {
      HttpOptions opts;
      opts.retry_limit = profile.retry_limit;
      opts.timeout = profile.timeout;
      opts.backoff_base = profile.backoff_base;
      opts.bearer_token = profile.bearer_token;
      t = std::make_shared<HttpTransport>(endpoint, opts);
    }
    return t;
  };
  Transports ts{resolve(profile.text_endpoint), resolve(profile.image_endpoint), resolve(profile.caption_endpoint),
                resolve(profile.embed_endpoint)};
  if (mock && !profile.embed_dim && profile.embed_endpoint == kMockEndpoint) profile.embed_dim = kMockEmbeddingDim;
  return Gateway(std::move(profile), std::move(ts), std::move(cache));
}

std::uint64_t Gateway::backend_calls() const {
  std::set<const Transport*> seen;
  std::uint64_t total = 0;
  for (const auto* t : {transports_.text.get(), transports_.image.get(), transports_.caption.get(),
                        transports_.embed.get()})
    if (seen.insert(t).second) total += t->calls();
  return total;
}

template <typename Parse>
auto Gateway::call(Transport& t, std::string_view path, const json& request, Parse&& parse)
    -> decltype(parse(std::declval<const json&>())) {
  std::optional<decltype(parse(std::declval<const json&>()))> parsed;
  const json resp = cached_call(*cache_, profile_.id, path, wire::canonical(request), t,
                                [&](const json& r) { parsed = parse(r); });
  if (parsed) return std::move(*parsed);
  return parse(resp);
}

namespace {

template <typename T>
T field(const json& j, const char* name, std::string_view what) {
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw ProtocolError(std::string(what) + ": bad field '" + name + "': " + e.what());
  }
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

std::vector<TextGeneration> Gateway::generate_text(std::string_view prompt, double temperature, int n,
                                                   bool want_logprobs, int max_tokens, std::int64_t seed) {
  if (n < 1) throw PreconditionError("generate_text: n must be >= 1");
  if (!(temperature >= 0.0)) throw PreconditionError("generate_text: temperature must be >= 0");
  wire::GenerateRequest req{std::string(prompt), temperature, n, max_tokens, want_logprobs, seed};
  return call(*transports_.text, wire::kGeneratePath, wire::to_json(req), [&](const json& resp) {
    const auto choices = field<json>(resp, "choices", "generate");
    if (!choices.is_array() || choices.size() != static_cast<std::size_t>(n))
      throw ProtocolError("generate: expected " + std::to_string(n) + " choices");
    std::vector<TextGeneration> out;
    out.reserve(choices.size());
    for (std::size_t i = 0; i < choices.size(); ++i) {
      TextGeneration g;
      g.text = field<std::string>(choices[i], "text", "generate");
      g.temperature = temperature;
      g.candidate_index = static_cast<int>(i);
      if (choices[i].contains("token_logprobs") && !choices[i]["token_logprobs"].is_null()) {
        auto lps = field<std::vector<double>>(choices[i], "token_logprobs", "generate");
        for (double lp : lps)
          if (!std::isfinite(lp) || lp > 0.0) throw ProtocolError("generate: token logprob must be finite and <= 0");
        g.token_logprobs = std::move(lps);
      } else if (want_logprobs) {
        throw ProtocolError("generate: logprobs requested but missing");
      }
      out.push_back(std::move(g));
    }
    return out;
  });
}

std::vector<VisualAsset> Gateway::generate_image(std::string_view prompt, int n, std::int64_t seed) {
  if (n < 1) throw PreconditionError("generate_image: n must be >= 1");
  wire::ImageRequest req{std::string(prompt), n, seed};
  return call(*transports_.image, wire::kImagePath, wire::to_json(req), [&](const json& resp) {
    const auto images = field<json>(resp, "images", "image");
    if (!images.is_array() || images.size() != static_cast<std::size_t>(n))
      throw ProtocolError("image: expected " + std::to_string(n) + " images");
    std::vector<VisualAsset> out;
    out.reserve(images.size());
    for (const auto& img : images) {
      Bytes png;
      try {
        png = base64_decode(field<std::string>(img, "png_base64", "image"));
        out.push_back(VisualAsset::generated(std::move(png), std::string(prompt)));
      } catch (const InputError& e) {
        throw ProtocolError(std::string("image: ") + e.what());
      } catch (const PreconditionError& e) {
        throw ProtocolError(std::string("image: ") + e.what());
      }
    }
    return out;
  });
}

std::string Gateway::caption_image(const VisualAsset& asset) {
  wire::CaptionRequest req{base64_encode(asset.png_bytes())};
  return call(*transports_.caption, wire::kCaptionPath, wire::to_json(req), [](const json& resp) {
    auto caption = field<std::string>(resp, "caption", "caption");
    if (is_blank(caption)) throw ProtocolError("caption: empty caption");
    return caption;
  });
}

std::vector<Embedding> Gateway::embed(std::span<const EmbedItem> items) {
  if (items.empty()) throw PreconditionError("embed: no items");
  wire::EmbedRequest req;
  for (const auto& it : items)
    req.inputs.push_back(
        {it.kind == EmbeddingKind::text ? wire::EmbedInput::Kind::text : wire::EmbedInput::Kind::image, it.payload});
  return call(*transports_.embed, wire::kEmbedPath, wire::to_json(req), [&](const json& resp) {
    const int dim = field<int>(resp, "dim", "embed");
    const auto vectors = field<std::vector<std::vector<double>>>(resp, "embeddings", "embed");
    if (vectors.size() != items.size()) throw ProtocolError("embed: embedding count mismatch");
    if (profile_.embed_dim && dim != *profile_.embed_dim)
      throw ProtocolError("embed: declared dim " + std::to_string(dim) + " != profile dim " +
                          std::to_string(*profile_.embed_dim));
    std::vector<Embedding> out;
    out.reserve(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != static_cast<std::size_t>(dim)) throw ProtocolError("embed: dimension mismatch");
      double norm = 0.0;
      for (double v : vectors[i]) {
        if (!std::isfinite(v)) throw ProtocolError("embed: non-finite component");
        norm += v * v;
      }
      if (norm == 0.0) throw ProtocolError("embed: zero vector for input " + std::to_string(i));
      out.push_back({vectors[i], items[i].kind});
    }
    int expected = 0;
    if (!dim_.compare_exchange_strong(expected, dim) && expected != dim)
      throw ProtocolError("embed: dimension changed between responses");
    return out;
  });
}

}  // namespace vcot
