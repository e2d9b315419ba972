// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vcot/gateway.hpp"
#include "vcot/infilling.hpp"
#include "vcot/templates.hpp"
#include "vcot/types.hpp"

namespace vcot {

// ------------------------------------------------------------ annotations

enum class Metric {
  image_consistency,
  text_consistency,
  image_novelty,
  text_novelty,
  novelty,
  consistency,
  descriptiveness,
  coherence
};
enum class AnnotationMode { pairwise, scale };
enum class Outcome { win, tie, loss };
/// Methods a record can name: the compared baseline of a pairwise record,
/// or the rated method of a scale record.
enum class Method { vcot, cot_plus_coi, cot, coi, random, no_infilling, reference };

std::string_view to_string(Metric m);
std::string_view to_string(AnnotationMode m);
std::string_view to_string(Outcome o);
std::string_view to_string(Method m);
Metric metric_from_string(std::string_view s);
Method method_from_string(std::string_view s);

struct AnnotationRecord {
  std::string item_id;
  Metric metric = Metric::consistency;
  AnnotationMode mode = AnnotationMode::pairwise;
  std::optional<Outcome> pairwise_outcome;  // VCoT vs baseline
  std::optional<int> scale_score;           // 1..5
  Method baseline = Method::cot_plus_coi;   // pairwise: the opponent
  Method method = Method::vcot;             // scale: the rated method
  std::string annotator_id;
  bool attention_passed = true;

  /// Exactly one of outcome/score must be present, matching the mode.
  void validate() const;
};

/// Reads the annotation CSV. Required header columns: item_id, metric, mode,
/// pairwise_outcome, scale_score, baseline, annotator_id. Optional: method
/// (rated method of scale rows, default vcot) and attention_check (pass|fail).
std::vector<AnnotationRecord> parse_annotations_csv(std::istream& in);

// ------------------------------------------------------------- tabulation

/// Three percentages stored as exact hundredths (2 decimals, half-up).
struct PercentTriple {
  std::array<std::int64_t, 3> hundredths{};
  std::array<std::size_t, 3> counts{};
  std::size_t total = 0;

  double value(std::size_t i) const { return static_cast<double>(hundredths[i]) / 100.0; }
  std::string formatted(std::size_t i) const;
  std::int64_t sum_hundredths() const { return hundredths[0] + hundredths[1] + hundredths[2]; }
};

/// count / total * 100 rounded half-up to hundredths, in exact integer math.
std::int64_t percent_hundredths(std::size_t count, std::size_t total);

/// (win%, tie%, loss%) over passing pairwise records for (metric, baseline).
PercentTriple tabulate_win_tie_loss(std::span<const AnnotationRecord> records, Metric metric, Method baseline);

/// (good%, neutral%, poor%) with 1-2 poor, 3 neutral, 4-5 good.
PercentTriple tabulate_scale(std::span<const AnnotationRecord> records, Metric metric, Method method);

/// Checksum for a reported percentage row.
bool sums_to_100(double a, double b, double c, double tolerance = 0.02);

struct TabulationReport {
  nlohmann::json summary;  // {"win_tie_loss": {baseline: {metric: ...}}, "scale": {method: {metric: ...}}}
  std::string markdown;
};

/// Every (baseline, metric) and (method, metric) combination present in the records.
TabulationReport tabulate_all(std::span<const AnnotationRecord> records);

// -------------------------------------------------------------- baselines

enum class BaselineKind { cot, coi, cot_plus_coi, random, no_infilling };

std::string_view to_string(BaselineKind k);
BaselineKind baseline_kind_from_string(std::string_view s);

struct BaselineContext {
  Gateway& gateway;
  const PromptTemplates& templates;
  InfillOptions options;
  /// Previously generated infillings the random baseline draws from.
  std::span<const InfillingNode> pool;
  std::int64_t seed = 0;
};

/// Baseline augmentation with the same recursion structure as VCoT:
///   cot           text from a text-only prompt, first (temperature 0) candidate, no visual
///   coi           visual generated from the neighbor captions, no text
///   cot_plus_coi  both of the above run side by side and zipped by position
///   random        every slot is a seeded uniform draw from the pool
///   no_infilling  passthrough
AugmentedSequence run_baseline(const Sequence& seq, const Foveation& foveation, const RecursionPolicy& policy,
                               BaselineKind kind, BaselineContext& ctx);

}  // namespace vcot
