// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include "vcot/foveation.hpp"

#include <cmath>

#include "vcot/errors.hpp"
#include "vcot/text_util.hpp"
#include "vcot/unification.hpp"

namespace vcot {

std::vector<CaptionedText> project_to_text(const Sequence& seq, Gateway& gateway) {
  if (seq.elements.empty()) throw PreconditionError("project_to_text: empty sequence");
  std::vector<CaptionedText> out;
  out.reserve(seq.elements.size());
  for (const auto& pair : seq.elements) {
    out.push_back({pair.caption() ? *pair.caption() : gateway.caption_image(pair.visual()), pair.text()});
  }
  return out;
}

Sequence with_captions(const Sequence& seq, Gateway& gateway) {
  Sequence out = seq;
  const auto projected = project_to_text(seq, gateway);
  for (std::size_t i = 0; i < out.elements.size(); ++i)
    if (!out.elements[i].caption()) out.elements[i] = out.elements[i].with_caption(projected[i].caption);
  return out;
}

std::string format_captioned(const CaptionedText& item) {
  if (item.caption.empty()) return "Text: " + item.text;
  if (item.text.empty()) return "Caption: " + item.caption;
  return "Caption: " + item.caption + " | Text: " + item.text;
}

std::string format_captions_and_texts(const std::vector<CaptionedText>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += '\n';
    out += "Step " + std::to_string(i + 1) + ": " + format_captioned(items[i]);
  }
  return out;
}

double joint_log_likelihood(std::span<const double> token_logprobs) {
  double sum = 0.0;
  for (double lp : token_logprobs) {
    if (!std::isfinite(lp) || lp > 0.0) throw InputError("token logprob must be finite and <= 0");
    sum += lp;
  }
  return sum;
}

FoveationRun multipoint_foveation_detailed(const Sequence& seq, const ExemplarSet& exemplars,
                                           const PromptTemplates& templates, Gateway& gateway,
                                           const FoveationOptions& options) {
  if (options.n_summaries < 1) throw PreconditionError("foveation: n_summaries must be >= 1");
  const auto projected = project_to_text(seq, gateway);

  FoveationRun run;
  run.summary_prompt = render(templates.foveation_summary, {{"exemplars", exemplars.foveation},
                                                            {"captions_and_texts", format_captions_and_texts(projected)}});
  const double temperature = options.n_summaries == 1 ? 0.0 : options.candidate_temperature;
  const auto gens =
      gateway.generate_text(run.summary_prompt, temperature, options.n_summaries, true, options.max_tokens, options.seed);
  for (const auto& g : gens) {
    run.candidates.push_back(trim(g.text));
    run.logliks.push_back(joint_log_likelihood(*g.token_logprobs));
  }
  run.chosen = argmax_lowest(run.logliks);
  run.foveation.summary = run.candidates[run.chosen];
  run.foveation.summary_loglik = run.logliks[run.chosen];

  run.focus_prompt = render(templates.foveation_focus, {{"summary", run.foveation.summary}});
  auto focus = trim(gateway.generate_text(run.focus_prompt, 0.0, 1, false, options.focus_max_tokens, options.seed)
                        .front()
                        .text);
  if (focus.empty()) {
    run.focus_retried = true;
    focus = trim(gateway.generate_text(run.focus_prompt, 0.5, 1, false, options.focus_max_tokens, options.seed)
                     .front()
                     .text);
  }
  if (focus.empty()) throw DegenerateFoveation("focus extraction returned an empty string twice");
  run.foveation.focus = std::move(focus);
  return run;
}

}  // namespace vcot
