// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vcot/config.hpp"
#include "vcot/downstream.hpp"
#include "vcot/evaluation.hpp"
#include "vcot/foveation.hpp"
#include "vcot/gateway.hpp"
#include "vcot/ingest.hpp"
#include "vcot/templates.hpp"

namespace vcot {

struct BaselineRun {
  BaselineKind kind;
  AugmentedSequence augmented;
  std::optional<DownstreamResult> downstream;
};

/// Everything produced for one input sequence.
struct SequenceRun {
  std::string sequence_id;
  TaskKind task = TaskKind::generic;
  std::optional<Sequence> sequence;  // unified and captioned
  std::optional<FoveationRun> foveation;
  std::optional<AugmentedSequence> augmented;
  std::optional<DownstreamResult> downstream;
  std::vector<BaselineRun> baselines;
  std::optional<std::string> error;
};

struct PipelineResources {
  Gateway& gateway;
  PromptTemplates templates;
  std::map<TaskKind, ExemplarSet> exemplars;

  static PipelineResources load(Gateway& gateway, const RunConfig& config);
  const ExemplarSet& exemplars_for(TaskKind task) const { return exemplars.at(task); }
};

/// unify (text-only input) -> caption -> foveate -> infill -> downstream ->
/// non-random baselines. Failures are captured in `error`.
SequenceRun process_sequence(const SourceSequence& source, const RunConfig& config, PipelineResources& resources);

/// Adds the random baseline, drawing from every VCoT infilling in `runs`.
void add_random_baselines(std::vector<SequenceRun>& runs, const RunConfig& config, PipelineResources& resources);

struct RunSummary {
  std::filesystem::path run_dir;
  std::size_t sequences = 0;
  std::size_t failed = 0;
  std::uint64_t backend_calls = 0;
  std::vector<std::string> warnings;

  /// Nonzero only when every sequence failed.
  int exit_code() const { return sequences > 0 && failed == sequences ? 1 : 0; }
};

/// Runs the whole pipeline and writes the run directory:
///   config.toml  assets/<id>.png  nodes.jsonl  outputs.jsonl
///   report.md  report.html  stats.json  cache/
RunSummary run_pipeline(const RunConfig& config);

/// Variant with a caller-supplied gateway (tests inject mocks with options).
RunSummary run_pipeline(const RunConfig& config, Gateway& gateway);

// Records and reports.

nlohmann::json node_record(const std::string& sequence_id, std::string_view method, std::size_t position,
                           const InfillingNode& node);
std::vector<nlohmann::json> node_records(const std::vector<SequenceRun>& runs);
std::vector<nlohmann::json> output_records(const std::vector<SequenceRun>& runs);
std::string render_report_markdown(const std::vector<SequenceRun>& runs);
std::string render_report_html(const std::vector<SequenceRun>& runs);

struct VerifyReport {
  std::size_t assets_checked = 0;
  std::size_t nodes_checked = 0;
  std::size_t outputs_checked = 0;
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
};

/// Re-derives asset hashes, selection argmaxes, foveation choice, prompt
/// hashes and per-gap node counts from a run directory.
VerifyReport verify_run(const std::filesystem::path& run_dir);

}  // namespace vcot
