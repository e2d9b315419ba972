// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vcot/gateway.hpp"
#include "vcot/types.hpp"

namespace vcot {

/// How the cosines against neighbor texts are folded into one score.
enum class NeighborAggregator { mean, min };

struct UnifyOptions {
  int candidates = 4;
  NeighborAggregator aggregator = NeighborAggregator::mean;
  std::int64_t seed = 0;
  std::string sequence_id;
  TaskKind task = TaskKind::generic;
  std::optional<std::string> title;
};

struct UnifiedStep {
  std::size_t chosen = 0;
  std::vector<double> scores;
};

struct UnifyResult {
  Sequence sequence;
  std::vector<UnifiedStep> steps;
};

/// Turns a text-only sequence into text-visual pairs: for each text, k
/// candidate images are generated from it and scored by cosine against the
/// neighbor texts (the text itself for a singleton); argmax wins, ties go to
/// the lowest candidate index.
UnifyResult unify_text_sequence_detailed(const std::vector<std::string>& texts, Gateway& gateway,
                                         const UnifyOptions& options);

inline Sequence unify_text_sequence(const std::vector<std::string>& texts, Gateway& gateway,
                                    const UnifyOptions& options) {
  return unify_text_sequence_detailed(texts, gateway, options).sequence;
}

/// Scores closer than this to the maximum count as tied with it.
inline constexpr double kScoreTieTolerance = 1e-12;

/// Lowest index whose score is within kScoreTieTolerance of the maximum.
/// NaN entries never win; PreconditionError when every entry is NaN.
std::size_t argmax_lowest(const std::vector<double>& scores);

}  // namespace vcot
