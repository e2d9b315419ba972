// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <future>
#include <vector>

namespace vcot {

/// Fixed-depth bisection of one gap. `generate(prev, next, depth)` yields
/// the node between two endpoints and `endpoint_of(node)` turns it into an
/// endpoint for the next level. Returns left ∥ [mid] ∥ right in order; the
/// two halves depend only on `mid` and may run concurrently.
template <typename Endpoint, typename Node, typename Generate, typename EndpointOf>
std::vector<Node> bisect_gap(const Endpoint& prev, const Endpoint& next, int depth, int depth_limit,
                             const Generate& generate, const EndpointOf& endpoint_of, bool parallel) {
  Node mid = generate(prev, next, depth);
  if (depth + 1 > depth_limit) return {std::move(mid)};

  const Endpoint mid_ep = endpoint_of(mid);
  auto left_fn = [&] {
    return bisect_gap<Endpoint, Node>(prev, mid_ep, depth + 1, depth_limit, generate, endpoint_of, parallel);
  };
  std::vector<Node> left, right;
  if (parallel) {
    auto left_future = std::async(std::launch::async, left_fn);
    right = bisect_gap<Endpoint, Node>(mid_ep, next, depth + 1, depth_limit, generate, endpoint_of, parallel);
    left = left_future.get();
  } else {
    left = left_fn();
    right = bisect_gap<Endpoint, Node>(mid_ep, next, depth + 1, depth_limit, generate, endpoint_of, parallel);
  }
  left.reserve(left.size() + 1 + right.size());
  left.push_back(std::move(mid));
  for (auto& n : right) left.push_back(std::move(n));
  return left;
}

/// Runs `fn(i)` for i in [0, count), concurrently when asked, and returns the
/// results in index order. The first failure in index order is rethrown.
template <typename Fn>
auto map_indexed(std::size_t count, bool parallel, const Fn& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> out;
  out.reserve(count);
  if (!parallel) {
    for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
    return out;
  }
  std::vector<std::future<R>> futures;
  futures.reserve(count);
  for (std::size_t i = 0; i < count; ++i) futures.push_back(std::async(std::launch::async, fn, i));
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

}  // namespace vcot
