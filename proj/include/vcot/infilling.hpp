// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vcot/foveation.hpp"
#include "vcot/gateway.hpp"
#include "vcot/templates.hpp"
#include "vcot/types.hpp"

namespace vcot {

/// What text candidates are compared against when picking the infilling text.
enum class TextScoreTarget { neighbor_text, neighbor_visual };

struct InfillOptions {
  int n_text = 5;
  int n_visual = 4;
  TextScoreTarget text_target = TextScoreTarget::neighbor_text;
  int max_tokens = 256;
  double candidate_temperature = 0.5;
  std::int64_t seed = 0;
  bool parallel = false;
};

/// Everything gen_infilling needs besides the two neighbors.
struct InfillContext {
  Gateway& gateway;
  const Foveation& foveation;
  const ExemplarSet& exemplars;
  const PromptTemplates& templates;
  InfillOptions options;
};

struct GapTask {
  TextVisualPair prev;
  TextVisualPair next;
  int depth = 1;
  std::size_t gap_index = 0;
};

/// Mean of the candidate's cosines to both neighbors.
double score_consistency(const Embedding& candidate, const Embedding& prev, const Embedding& next);

/// 1 - max(cos(c, prev), cos(c, next)). Diagnostic only, never used to select.
double novelty_proxy(const Embedding& candidate, const Embedding& prev, const Embedding& next);

/// Candidates and scores gathered while producing one node.
struct CandidateSet {
  std::vector<TextGeneration> texts;
  std::vector<VisualAsset> visuals;
  std::vector<double> text_scores;
  std::vector<double> visual_scores;
  std::string prompt;
};

/// One infilling between two pairs: n_text candidate texts (one at
/// temperature 0, the rest at candidate_temperature) ranked by
/// score_consistency against the neighbors, then n_visual images of the
/// winning text ranked by cosine to it. Ties go to the lowest index.
InfillingNode gen_infilling(const GapTask& task, InfillContext& ctx, CandidateSet* candidates = nullptr);

/// Fixed-depth recursive infilling of one gap, in order.
std::vector<InfillingNode> rec_gen(const TextVisualPair& prev, const TextVisualPair& next, int depth,
                                   const RecursionPolicy& policy, std::size_t gap_index, InfillContext& ctx);

/// rec_gen over every adjacent pair, merged. A failing gap aborts the run
/// with a GapError naming it.
AugmentedSequence infill_sequence(const Sequence& seq, const RecursionPolicy& policy, InfillContext& ctx);

/// Renders the infilling prompt for two neighbors with known captions.
std::string build_infill_prompt(const PromptTemplates& templates, const ExemplarSet& exemplars,
                                const Foveation& foveation, const CaptionedText& prev, const CaptionedText& next);

}  // namespace vcot
