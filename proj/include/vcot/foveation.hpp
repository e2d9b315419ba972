// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vcot/gateway.hpp"
#include "vcot/templates.hpp"
#include "vcot/types.hpp"

namespace vcot {

struct CaptionedText {
  std::string caption;
  std::string text;
};

/// Projects every pair into text space as (caption, text). Pairs that
/// already carry a caption are not sent to the captioner.
std::vector<CaptionedText> project_to_text(const Sequence& seq, Gateway& gateway);

/// Returns a copy of `seq` whose pairs all carry captions.
Sequence with_captions(const Sequence& seq, Gateway& gateway);

/// "Caption: ... | Text: ..."; an empty side is left out.
std::string format_captioned(const CaptionedText& item);

/// "Step 1: Caption: ... | Text: ..." lines, one per entry.
std::string format_captions_and_texts(const std::vector<CaptionedText>& items);

/// Joint log-likelihood of a generated sequence: the sum of its token log
/// probabilities. Entries must be finite and <= 0 (InputError otherwise).
double joint_log_likelihood(std::span<const double> token_logprobs);

struct FoveationOptions {
  int n_summaries = 3;
  int max_tokens = 512;
  int focus_max_tokens = 128;
  std::int64_t seed = 0;
  /// Temperature of the summary batch when more than one is requested.
  double candidate_temperature = 0.5;
};

struct FoveationRun {
  Foveation foveation;
  std::vector<std::string> candidates;
  std::vector<double> logliks;
  std::size_t chosen = 0;
  std::string summary_prompt;
  std::string focus_prompt;
  bool focus_retried = false;
};

/// Captions the sequence, samples n_summaries candidate summaries with token
/// logprobs in one batch, keeps the most likely (lowest index on ties), and
/// extracts the focus from it with a second temperature-0 prompt. An empty
/// focus is retried once at temperature 0.5, then DegenerateFoveation.
FoveationRun multipoint_foveation_detailed(const Sequence& seq, const ExemplarSet& exemplars,
                                           const PromptTemplates& templates, Gateway& gateway,
                                           const FoveationOptions& options = {});

inline Foveation multipoint_foveation(const Sequence& seq, const ExemplarSet& exemplars,
                                      const PromptTemplates& templates, Gateway& gateway,
                                      const FoveationOptions& options = {}) {
  return multipoint_foveation_detailed(seq, exemplars, templates, gateway, options).foveation;
}

}  // namespace vcot
