// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcot/evaluation.hpp"
#include "vcot/gateway.hpp"
#include "vcot/infilling.hpp"
#include "vcot/ingest.hpp"
#include "vcot/unification.hpp"

namespace vcot {

/// Effective settings of one `vcot run`. Every key of the `[run]` table in
/// the TOML config has a field here; CLI flags override after loading.
struct RunConfig {
  std::filesystem::path dataset;
  DatasetFormat format = DatasetFormat::vist;
  std::filesystem::path out = "vcot-run";
  std::int64_t seed = 0;
  int depth = 2;
  int text_candidates = 5;
  int image_candidates = 4;
  int unify_candidates = 4;
  int summary_candidates = 3;
  std::string backend = "mock";
  std::vector<BaselineKind> baselines;
  int workers = 4;
  bool no_infill = false;
  bool parallel_gaps = false;
  TextScoreTarget text_target = TextScoreTarget::neighbor_text;
  NeighborAggregator unify_aggregator = NeighborAggregator::mean;
  std::optional<std::filesystem::path> templates_dir;
  std::optional<std::filesystem::path> exemplars_dir;
  std::optional<std::filesystem::path> cache_dir;  // default: <out>/cache
  int max_tokens_infill = 256;
  int max_tokens_summary = 512;
  std::map<std::string, BackendProfile> profiles;

  void validate() const;
  /// The backend profile named by `backend` ("mock" needs no entry).
  BackendProfile resolve_profile() const;
  std::filesystem::path effective_cache_dir() const { return cache_dir ? *cache_dir : out / "cache"; }
};

/// Parses a TOML config; relative paths resolve against the file's directory.
RunConfig load_config(const std::filesystem::path& file);
RunConfig parse_config(std::string_view toml_text, const std::filesystem::path& base_dir = {});

/// TOML rendering of the effective configuration (profiles without tokens).
std::string config_to_toml(const RunConfig& config);

std::vector<BaselineKind> parse_baseline_list(std::string_view comma_separated);

}  // namespace vcot
