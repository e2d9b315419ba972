// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <chrono>
#include <optional>
#include <string>

#include "vcot/gateway.hpp"

namespace vcot {

struct HttpOptions {
  int retry_limit = 3;
  std::chrono::duration<double> timeout{60.0};
  std::chrono::milliseconds backoff_base{200};
  std::optional<std::string> bearer_token;
};

/// POSTs JSON to `<base_url><path>`. Non-2xx answers and transport failures
/// are retried with exponential backoff (base, 2*base, 4*base, ...) up to
/// retry_limit times, then surface as BackendUnavailable.
class HttpTransport final : public Transport {
 public:
  HttpTransport(std::string base_url, HttpOptions options);

  nlohmann::json post(std::string_view path, const std::string& body) override;
  std::uint64_t calls() const override { return calls_.load(); }
  std::uint64_t attempts() const { return attempts_.load(); }

 private:
  std::string base_url_;  // scheme://host[:port]
  std::string prefix_;    // path before the wire path, may be empty
  HttpOptions options_;
  std::atomic<std::uint64_t> calls_{0};
  std::atomic<std::uint64_t> attempts_{0};
};

}  // namespace vcot
