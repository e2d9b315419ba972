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

struct DownstreamOptions {
  int max_tokens = 512;
  std::int64_t seed = 0;
  bool parallel = false;
};

struct StepOutput {
  std::size_t step_index = 0;
  std::string text;
  std::string prompt;
  std::string prompt_sha256;
};

struct DownstreamResult {
  std::string summary;
  std::string summary_prompt;
  std::vector<StepOutput> steps;
};

/// (caption, text) for every merged entry. Infillings without a visual get
/// an empty caption, infillings without text an empty text.
std::vector<CaptionedText> project_merged(const AugmentedSequence& aug, Gateway& gateway);

/// Autoregressive storytelling: one extensive summary over the merged
/// sequence, then one passage per original step whose prompt carries every
/// previously generated passage. The window of step k is the infillings of
/// the gap before it followed by the step itself.
DownstreamResult build_story(const AugmentedSequence& aug, const Foveation& foveation, const ExemplarSet& exemplars,
                             const PromptTemplates& templates, Gateway& gateway, const DownstreamOptions& options = {});

/// Instruction summarization: one instruction per original step, prompted
/// with the step and the infillings of both adjacent gaps. Steps do not see
/// each other's outputs.
DownstreamResult summarize_instructions(const AugmentedSequence& aug, const Foveation& foveation,
                                        const ExemplarSet& exemplars, const PromptTemplates& templates,
                                        Gateway& gateway, const DownstreamOptions& options = {});

}  // namespace vcot
