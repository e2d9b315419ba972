// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vcot/hashing.hpp"

namespace vcot {

enum class AssetSource { dataset, generated };
enum class TaskKind { storytelling, summarization, generic };

std::string_view to_string(AssetSource s);
std::string_view to_string(TaskKind t);
AssetSource asset_source_from_string(std::string_view s);
TaskKind task_kind_from_string(std::string_view s);

/// Content-addressed PNG image. The id is always the lowercase hex SHA-256
/// of the bytes; construction validates the payload.
class VisualAsset {
 public:
  static VisualAsset from_dataset(Bytes png_bytes);
  static VisualAsset generated(Bytes png_bytes, std::string prompt);

  const std::string& id() const noexcept { return id_; }
  const Bytes& png_bytes() const noexcept { return png_; }
  AssetSource source() const noexcept { return source_; }
  const std::optional<std::string>& prompt() const noexcept { return prompt_; }

  friend bool operator==(const VisualAsset& a, const VisualAsset& b) {
    return a.id_ == b.id_ && a.source_ == b.source_ && a.prompt_ == b.prompt_;
  }

 private:
  VisualAsset(Bytes png, AssetSource source, std::optional<std::string> prompt);

  std::string id_;
  Bytes png_;
  AssetSource source_;
  std::optional<std::string> prompt_;
};

/// One element of a sequence: (v_i, t_i) plus the cached caption c_i.
class TextVisualPair {
 public:
  TextVisualPair(std::string text, VisualAsset visual, std::optional<std::string> caption = std::nullopt);

  const std::string& text() const noexcept { return text_; }
  const VisualAsset& visual() const noexcept { return visual_; }
  const std::optional<std::string>& caption() const noexcept { return caption_; }

  TextVisualPair with_caption(std::string caption) const;

  friend bool operator==(const TextVisualPair&, const TextVisualPair&) = default;

 private:
  std::string text_;
  VisualAsset visual_;
  std::optional<std::string> caption_;
};

struct Sequence {
  std::string id;
  TaskKind task = TaskKind::generic;
  std::vector<TextVisualPair> elements;
  std::optional<std::string> title;

  std::size_t gap_count() const noexcept { return elements.empty() ? 0 : elements.size() - 1; }

  friend bool operator==(const Sequence&, const Sequence&) = default;
};

/// Which generator produced an infilling slot.
enum class InfillMethod { vcot, cot, coi, cot_plus_coi, random };

std::string_view to_string(InfillMethod m);

/// Diagnostics recorded for every selection, kept for auditing.
struct SelectionTrace {
  std::vector<double> text_candidate_scores;    // NaN for ineligible (blank) candidates
  std::vector<double> visual_candidate_scores;
  std::optional<double> novelty;
  std::string prompt_sha256;
  std::string image_prompt_sha256;

  friend bool operator==(const SelectionTrace&, const SelectionTrace&) = default;
};

/// A generated slot between two elements. VCoT nodes always carry both text
/// and visual; baseline nodes may carry only one modality.
struct InfillingNode {
  std::optional<std::string> text;
  std::optional<VisualAsset> visual;
  std::optional<std::string> caption;
  int depth = 1;
  std::size_t gap_index = 0;
  double text_score = 0.0;
  double visual_score = 0.0;
  int candidate_index_text = 0;
  int candidate_index_visual = 0;
  InfillMethod method = InfillMethod::vcot;
  SelectionTrace trace;

  bool is_complete_pair() const noexcept { return text.has_value() && visual.has_value(); }
  /// Throws PreconditionError unless both modalities are present.
  TextVisualPair pair() const;

  friend bool operator==(const InfillingNode&, const InfillingNode&) = default;
};

enum class Provenance { original, infilled };

struct MergedEntry {
  Provenance tag;
  std::size_t index;  // into original.elements or infillings

  friend bool operator==(const MergedEntry&, const MergedEntry&) = default;
};

struct AugmentedSequence {
  Sequence original;
  std::vector<InfillingNode> infillings;
  std::vector<MergedEntry> merged;

  /// Infillings that sit between original element `gap` and `gap + 1`.
  std::vector<const InfillingNode*> gap_nodes(std::size_t gap) const;
};

struct Foveation {
  std::string focus;
  std::string summary;
  double summary_loglik = 0.0;

  friend bool operator==(const Foveation&, const Foveation&) = default;
};

enum class Halting { fixed_depth };

struct RecursionPolicy {
  int depth_limit = 2;
  Halting halting = Halting::fixed_depth;

  void validate() const;
};

/// Splices per-gap infilling lists between the original elements.
/// Throws StructuralError if per_gap.size() != max(0, n - 1).
AugmentedSequence merge_gap_results(const Sequence& original, std::vector<std::vector<InfillingNode>> per_gap);

/// n + (n - 1) * (2^d - 1) for n >= 1, 0 for n == 0.
std::size_t expected_merged_length(std::size_t n, int depth_limit);

/// The elements of `aug.merged` tagged original, in order.
std::vector<TextVisualPair> strip_infillings(const AugmentedSequence& aug);

}  // namespace vcot
