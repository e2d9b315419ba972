// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include "vcot/http_transport.hpp"

#include <httplib.h>

#include <cmath>
#include <thread>

#include "vcot/errors.hpp"

namespace vcot {

HttpTransport::HttpTransport(std::string base_url, HttpOptions options)
    : base_url_(std::move(base_url)), options_(std::move(options)) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
  if (base_url_.empty()) throw PreconditionError("http transport: empty base URL");
  if (options_.retry_limit < 0) throw PreconditionError("http transport: retry_limit must be >= 0");
  const auto scheme = base_url_.find("://");
  const auto slash = base_url_.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (slash != std::string::npos) {
    prefix_ = base_url_.substr(slash);
    base_url_.resize(slash);
  }
}

nlohmann::json HttpTransport::post(std::string_view path, const std::string& body) {
  ++calls_;
  httplib::Client client(base_url_);
  const auto secs = std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(secs).count(),
                                static_cast<time_t>(secs.count() % 1000000));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(secs).count(),
                          static_cast<time_t>(secs.count() % 1000000));
  httplib::Headers headers;
  if (options_.bearer_token) headers.emplace("Authorization", "Bearer " + *options_.bearer_token);

  std::string last_error;
  for (int attempt = 0; attempt <= options_.retry_limit; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(options_.backoff_base * (1LL << (attempt - 1)));
    ++attempts_;
    auto res = client.Post(prefix_ + std::string(path), headers, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    try {
      return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
      throw ProtocolError(base_url_ + prefix_ + std::string(path) + ": malformed JSON: " + e.what());
    }
  }
  throw BackendUnavailable(base_url_ + prefix_ + std::string(path) + ": " + last_error + " after " +
                           std::to_string(options_.retry_limit + 1) + " attempts");
}

}  // namespace vcot
