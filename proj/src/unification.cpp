// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include "vcot/unification.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "vcot/errors.hpp"

namespace vcot {

std::size_t argmax_lowest(const std::vector<double>& scores) {
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (double s : scores) {
    if (std::isnan(s)) continue;
    any = true;
    best = std::max(best, s);
  }
  if (!any) throw PreconditionError("argmax over no eligible scores");
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (!std::isnan(scores[i]) && scores[i] >= best - kScoreTieTolerance) return i;
  return 0;
}

UnifyResult unify_text_sequence_detailed(const std::vector<std::string>& texts, Gateway& gateway,
                                         const UnifyOptions& options) {
  if (texts.empty()) throw PreconditionError("unify: no texts");
  if (options.candidates < 1) throw PreconditionError("unify: candidate count must be >= 1");
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (std::all_of(texts[i].begin(), texts[i].end(), [](unsigned char c) { return std::isspace(c) != 0; }))
      throw InputError("unify: text " + std::to_string(i) + " is empty");
  }

  const std::size_t n = texts.size();
  std::vector<EmbedItem> text_items;
  for (const auto& t : texts) text_items.push_back(EmbedItem::text(t));
  const auto text_embs = gateway.embed(text_items);

  UnifyResult result;
  result.sequence.id = options.sequence_id;
  result.sequence.task = options.task;
  result.sequence.title = options.title;

  for (std::size_t i = 0; i < n; ++i) {
    auto candidates = gateway.generate_image(texts[i], options.candidates, options.seed);
    std::vector<std::size_t> neighbors;
    if (i > 0) neighbors.push_back(i - 1);
    if (i + 1 < n) neighbors.push_back(i + 1);
    if (neighbors.empty()) neighbors.push_back(i);

    UnifiedStep step;
    std::vector<EmbedItem> image_items;
    for (const auto& c : candidates) image_items.push_back(EmbedItem::image(c));
    const auto image_embs = gateway.embed(image_items);
    for (const auto& emb : image_embs) {
      double agg = options.aggregator == NeighborAggregator::mean ? 0.0 : 2.0;
      for (auto j : neighbors) {
        const double c = cosine(emb, text_embs[j]);
        agg = options.aggregator == NeighborAggregator::mean ? agg + c : std::min(agg, c);
      }
      if (options.aggregator == NeighborAggregator::mean) agg /= static_cast<double>(neighbors.size());
      step.scores.push_back(agg);
    }
    step.chosen = argmax_lowest(step.scores);
    result.sequence.elements.emplace_back(texts[i], candidates[step.chosen]);
    result.steps.push_back(std::move(step));
  }
  return result;
}

}  // namespace vcot
