// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include "vcot/infilling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vcot/errors.hpp"
#include "vcot/recursion.hpp"
#include "vcot/text_util.hpp"
#include "vcot/unification.hpp"

namespace vcot {

double score_consistency(const Embedding& candidate, const Embedding& prev, const Embedding& next) {
  return (cosine(candidate, prev) + cosine(candidate, next)) / 2.0;
}

double novelty_proxy(const Embedding& candidate, const Embedding& prev, const Embedding& next) {
  return 1.0 - std::max(cosine(candidate, prev), cosine(candidate, next));
}

std::string build_infill_prompt(const PromptTemplates& templates, const ExemplarSet& exemplars,
                                const Foveation& foveation, const CaptionedText& prev, const CaptionedText& next) {
  return render(templates.infill, {{"exemplars", exemplars.infilling},
                                   {"focus", foveation.focus},
                                   {"prev_caption", prev.caption},
                                   {"prev_text", prev.text},
                                   {"next_caption", next.caption},
                                   {"next_text", next.text}});
}

namespace {

std::string caption_of(const TextVisualPair& p, Gateway& gw) {
  return p.caption() ? *p.caption() : gw.caption_image(p.visual());
}

}  // namespace

InfillingNode gen_infilling(const GapTask& task, InfillContext& ctx, CandidateSet* candidates) {
  const auto& opt = ctx.options;
  if (opt.n_text < 1 || opt.n_visual < 1) throw PreconditionError("gen_infilling: candidate counts must be >= 1");
  if (task.depth < 1) throw PreconditionError("gen_infilling: depth must be >= 1");
  if (is_blank(ctx.foveation.focus)) throw PreconditionError("gen_infilling: foveation focus is empty");
  Gateway& gw = ctx.gateway;

  // Step 1: candidate texts.
  const CaptionedText prev{caption_of(task.prev, gw), task.prev.text()};
  const CaptionedText next{caption_of(task.next, gw), task.next.text()};
  CandidateSet set;
  set.prompt = build_infill_prompt(ctx.templates, ctx.exemplars, ctx.foveation, prev, next);

  set.texts = gw.generate_text(set.prompt, 0.0, 1, false, opt.max_tokens, opt.seed);
  if (opt.n_text > 1) {
    auto spread = gw.generate_text(set.prompt, opt.candidate_temperature, opt.n_text - 1, false, opt.max_tokens, opt.seed);
    for (auto& g : spread) {
      g.candidate_index = static_cast<int>(set.texts.size());
      set.texts.push_back(std::move(g));
    }
  }
  for (auto& g : set.texts) g.text = trim(g.text);

  std::vector<EmbedItem> items;
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < set.texts.size(); ++i) {
    if (set.texts[i].text.empty()) continue;
    eligible.push_back(i);
    items.push_back(EmbedItem::text(set.texts[i].text));
  }
  if (eligible.empty()) throw GenerationError("gen_infilling: every text candidate is empty");
  if (opt.text_target == TextScoreTarget::neighbor_text) {
    items.push_back(EmbedItem::text(task.prev.text()));
    items.push_back(EmbedItem::text(task.next.text()));
  } else {
    items.push_back(EmbedItem::image(task.prev.visual()));
    items.push_back(EmbedItem::image(task.next.visual()));
  }
  const auto embs = gw.embed(items);
  const Embedding& prev_emb = embs[embs.size() - 2];
  const Embedding& next_emb = embs[embs.size() - 1];

  set.text_scores.assign(set.texts.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t e = 0; e < eligible.size(); ++e)
    set.text_scores[eligible[e]] = score_consistency(embs[e], prev_emb, next_emb);
  const std::size_t best_text = argmax_lowest(set.text_scores);
  const auto best_pos = static_cast<std::size_t>(std::find(eligible.begin(), eligible.end(), best_text) - eligible.begin());
  const Embedding& best_emb = embs[best_pos];
  const std::string& text = set.texts[best_text].text;

  // Step 2: candidate visuals of the winning text.
  set.visuals = gw.generate_image(text, opt.n_visual, opt.seed);
  std::vector<EmbedItem> image_items;
  for (const auto& v : set.visuals) image_items.push_back(EmbedItem::image(v));
  const auto image_embs = gw.embed(image_items);
  for (const auto& e : image_embs) set.visual_scores.push_back(cosine(e, best_emb));
  const std::size_t best_visual = argmax_lowest(set.visual_scores);

  InfillingNode node;
  node.text = text;
  node.visual = set.visuals[best_visual];
  node.depth = task.depth;
  node.gap_index = task.gap_index;
  node.text_score = set.text_scores[best_text];
  node.visual_score = set.visual_scores[best_visual];
  node.candidate_index_text = static_cast<int>(best_text);
  node.candidate_index_visual = static_cast<int>(best_visual);
  node.method = InfillMethod::vcot;
  node.trace.text_candidate_scores = set.text_scores;
  node.trace.visual_candidate_scores = set.visual_scores;
  node.trace.novelty = novelty_proxy(best_emb, prev_emb, next_emb);
  node.trace.prompt_sha256 = sha256_hex(set.prompt);
  node.trace.image_prompt_sha256 = sha256_hex(text);
  if (candidates) *candidates = std::move(set);
  return node;
}

std::vector<InfillingNode> rec_gen(const TextVisualPair& prev, const TextVisualPair& next, int depth,
                                   const RecursionPolicy& policy, std::size_t gap_index, InfillContext& ctx) {
  policy.validate();
  if (depth < 1) throw PreconditionError("rec_gen: depth must be >= 1");
  auto generate = [&](const TextVisualPair& a, const TextVisualPair& b, int d) {
    return gen_infilling(GapTask{a, b, d, gap_index}, ctx);
  };
  auto endpoint_of = [](const InfillingNode& n) { return n.pair(); };
  return bisect_gap<TextVisualPair, InfillingNode>(prev, next, depth, policy.depth_limit, generate, endpoint_of,
                                                   ctx.options.parallel);
}

AugmentedSequence infill_sequence(const Sequence& seq, const RecursionPolicy& policy, InfillContext& ctx) {
  if (seq.elements.empty()) throw PreconditionError("infill_sequence: empty sequence");
  policy.validate();
  auto per_gap = map_indexed(seq.gap_count(), ctx.options.parallel, [&](std::size_t gap) {
    try {
      return rec_gen(seq.elements[gap], seq.elements[gap + 1], 1, policy, gap, ctx);
    } catch (const GapError&) {
      throw;
    } catch (const std::exception& e) {
      throw GapError(gap, e.what());
    }
  });
  return merge_gap_results(seq, std::move(per_gap));
}

}  // namespace vcot
