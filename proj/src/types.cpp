// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include "vcot/types.hpp"

#include <algorithm>
#include <cctype>

#include "vcot/errors.hpp"
#include "vcot/png.hpp"

namespace vcot {

std::string_view to_string(AssetSource s) { return s == AssetSource::dataset ? "dataset" : "generated"; }

std::string_view to_string(TaskKind t) {
  switch (t) {
    case TaskKind::storytelling: return "storytelling";
    case TaskKind::summarization: return "summarization";
    case TaskKind::generic: return "generic";
  }
  return "generic";
}

AssetSource asset_source_from_string(std::string_view s) {
  if (s == "dataset") return AssetSource::dataset;
  if (s == "generated") return AssetSource::generated;
  throw InputError("unknown asset source: " + std::string(s));
}

TaskKind task_kind_from_string(std::string_view s) {
  if (s == "storytelling") return TaskKind::storytelling;
  if (s == "summarization") return TaskKind::summarization;
  if (s == "generic") return TaskKind::generic;
  throw InputError("unknown task: " + std::string(s));
}

std::string_view to_string(InfillMethod m) {
  switch (m) {
    case InfillMethod::vcot: return "vcot";
    case InfillMethod::cot: return "cot";
    case InfillMethod::coi: return "coi";
    case InfillMethod::cot_plus_coi: return "cot_plus_coi";
    case InfillMethod::random: return "random";
  }
  return "vcot";
}

VisualAsset::VisualAsset(Bytes png, AssetSource source, std::optional<std::string> prompt)
    : png_(std::move(png)), source_(source), prompt_(std::move(prompt)) {
  if (png_.empty()) throw PreconditionError("visual asset: zero-byte payload");
  if (!png::is_valid(png_)) throw PreconditionError("visual asset: payload is not a valid PNG");
  if (source_ == AssetSource::generated && !prompt_) throw PreconditionError("generated asset without prompt");
  id_ = sha256_hex(png_);
}

VisualAsset VisualAsset::from_dataset(Bytes png_bytes) {
  return VisualAsset(std::move(png_bytes), AssetSource::dataset, std::nullopt);
}

VisualAsset VisualAsset::generated(Bytes png_bytes, std::string prompt) {
  return VisualAsset(std::move(png_bytes), AssetSource::generated, std::move(prompt));
}

namespace {

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

TextVisualPair::TextVisualPair(std::string text, VisualAsset visual, std::optional<std::string> caption)
    : text_(std::move(text)), visual_(std::move(visual)), caption_(std::move(caption)) {
  if (is_blank(text_)) throw InputError("text-visual pair: text is empty");
}

TextVisualPair TextVisualPair::with_caption(std::string caption) const {
  return TextVisualPair(text_, visual_, std::move(caption));
}

TextVisualPair InfillingNode::pair() const {
  if (!is_complete_pair()) throw PreconditionError("infilling node lacks a modality");
  return TextVisualPair(*text, *visual, caption);
}

std::vector<const InfillingNode*> AugmentedSequence::gap_nodes(std::size_t gap) const {
  std::vector<const InfillingNode*> out;
  for (const auto& n : infillings)
    if (n.gap_index == gap) out.push_back(&n);
  return out;
}

void RecursionPolicy::validate() const {
  if (depth_limit < 1) throw PreconditionError("depth limit must be >= 1");
}

AugmentedSequence merge_gap_results(const Sequence& original, std::vector<std::vector<InfillingNode>> per_gap) {
  const std::size_t gaps = original.gap_count();
  if (per_gap.size() != gaps)
    throw StructuralError("expected " + std::to_string(gaps) + " gap lists, got " + std::to_string(per_gap.size()));

  AugmentedSequence aug;
  aug.original = original;
  for (std::size_t i = 0; i < original.elements.size(); ++i) {
    aug.merged.push_back({Provenance::original, i});
    if (i < gaps) {
      for (auto& node : per_gap[i]) {
        aug.merged.push_back({Provenance::infilled, aug.infillings.size()});
        aug.infillings.push_back(std::move(node));
      }
    }
  }
  return aug;
}

std::size_t expected_merged_length(std::size_t n, int depth_limit) {
  if (n == 0) return 0;
  const std::size_t per_gap = (std::size_t{1} << depth_limit) - 1;
  return n + (n - 1) * per_gap;
}

std::vector<TextVisualPair> strip_infillings(const AugmentedSequence& aug) {
  std::vector<TextVisualPair> out;
  for (const auto& e : aug.merged)
    if (e.tag == Provenance::original) out.push_back(aug.original.elements.at(e.index));
  return out;
}

}  // namespace vcot
