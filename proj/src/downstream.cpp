// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include "vcot/downstream.hpp"

#include "vcot/errors.hpp"
#include "vcot/recursion.hpp"
#include "vcot/text_util.hpp"

namespace vcot {

std::vector<CaptionedText> project_merged(const AugmentedSequence& aug, Gateway& gateway) {
  std::vector<CaptionedText> out;
  out.reserve(aug.merged.size());
  for (const auto& entry : aug.merged) {
    if (entry.tag == Provenance::original) {
      const auto& p = aug.original.elements.at(entry.index);
      out.push_back({p.caption() ? *p.caption() : gateway.caption_image(p.visual()), p.text()});
    } else {
      const auto& n = aug.infillings.at(entry.index);
      std::string caption;
      if (n.caption)
        caption = *n.caption;
      else if (n.visual)
        caption = gateway.caption_image(*n.visual);
      out.push_back({std::move(caption), n.text.value_or("")});
    }
  }
  return out;
}

namespace {

std::pair<std::string, std::string> extensive_summary(const std::vector<CaptionedText>& merged,
                                                      const ExemplarSet& exemplars, const PromptTemplates& templates,
                                                      Gateway& gateway, const DownstreamOptions& options) {
  std::string prompt = render(templates.extensive_summary, {{"exemplars", exemplars.foveation},
                                                            {"captions_and_texts", format_captions_and_texts(merged)}});
  auto summary = trim(gateway.generate_text(prompt, 0.0, 1, false, options.max_tokens, options.seed).front().text);
  if (summary.empty()) throw GenerationError("extensive summary is empty");
  return {std::move(summary), std::move(prompt)};
}

StepOutput run_step(std::size_t k, std::string prompt, Gateway& gateway, const DownstreamOptions& options) {
  auto text = trim(gateway.generate_text(prompt, 0.0, 1, false, options.max_tokens, options.seed).front().text);
  if (text.empty()) throw StepError(k, "empty generation");
  StepOutput out;
  out.step_index = k;
  out.text = std::move(text);
  out.prompt_sha256 = sha256_hex(prompt);
  out.prompt = std::move(prompt);
  return out;
}

/// Position of each original element inside aug.merged.
std::vector<std::size_t> original_positions(const AugmentedSequence& aug) {
  std::vector<std::size_t> pos(aug.original.elements.size());
  for (std::size_t m = 0; m < aug.merged.size(); ++m)
    if (aug.merged[m].tag == Provenance::original) pos[aug.merged[m].index] = m;
  return pos;
}

std::string infilling_line(const CaptionedText& c) {
  return c.text.empty() ? "[image] " + c.caption : c.text;
}

}  // namespace

DownstreamResult build_story(const AugmentedSequence& aug, const Foveation& foveation, const ExemplarSet& exemplars,
                             const PromptTemplates& templates, Gateway& gateway, const DownstreamOptions& options) {
  if (aug.original.task != TaskKind::storytelling) throw PreconditionError("build_story: sequence is not a story");
  const auto merged = project_merged(aug, gateway);
  DownstreamResult result;
  std::tie(result.summary, result.summary_prompt) = extensive_summary(merged, exemplars, templates, gateway, options);

  const auto pos = original_positions(aug);
  std::string history;
  for (std::size_t k = 0; k < pos.size(); ++k) {
    const std::size_t begin = k == 0 ? 0 : pos[k - 1] + 1;
    std::string current;
    for (std::size_t m = begin; m <= pos[k]; ++m) {
      if (!current.empty()) current += '\n';
      current += format_captioned(merged[m]);
    }
    std::string prompt = render(templates.story_step, {{"exemplars", exemplars.downstream},
                                                       {"summary", result.summary},
                                                       {"focus", foveation.focus},
                                                       {"history", history},
                                                       {"current", current}});
    auto step = run_step(k, std::move(prompt), gateway, options);
    if (!history.empty()) history += '\n';
    history += step.text;
    result.steps.push_back(std::move(step));
  }
  return result;
}

DownstreamResult summarize_instructions(const AugmentedSequence& aug, const Foveation& foveation,
                                        const ExemplarSet& exemplars, const PromptTemplates& templates,
                                        Gateway& gateway, const DownstreamOptions& options) {
  if (aug.original.task != TaskKind::summarization)
    throw PreconditionError("summarize_instructions: sequence is not a how-to article");
  const auto merged = project_merged(aug, gateway);
  DownstreamResult result;
  std::tie(result.summary, result.summary_prompt) = extensive_summary(merged, exemplars, templates, gateway, options);

  const auto pos = original_positions(aug);
  result.steps = map_indexed(pos.size(), options.parallel, [&](std::size_t k) {
    const std::size_t begin = k == 0 ? pos[k] : pos[k - 1] + 1;
    const std::size_t end = k + 1 == pos.size() ? pos[k] : pos[k + 1] - 1;
    std::string infillings;
    for (std::size_t m = begin; m <= end; ++m) {
      if (m == pos[k]) continue;
      if (!infillings.empty()) infillings += '\n';
      infillings += "- " + infilling_line(merged[m]);
    }
    std::string prompt = render(templates.instruction_step, {{"exemplars", exemplars.downstream},
                                                             {"summary", result.summary},
                                                             {"focus", foveation.focus},
                                                             {"infillings", infillings},
                                                             {"current", format_captioned(merged[pos[k]])}});
    return run_step(k, std::move(prompt), gateway, options);
  });
  return result;
}

}  // namespace vcot
