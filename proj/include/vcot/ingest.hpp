// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vcot/types.hpp"

namespace vcot {

enum class DatasetFormat { vist, wikihow, generic };

std::string_view to_string(DatasetFormat f);
DatasetFormat dataset_format_from_string(std::string_view s);

/// A dataset record before unification. Text-only records leave `visuals`
/// empty; records with images carry one asset per step.
struct SourceSequence {
  std::string id;
  TaskKind task = TaskKind::generic;
  std::optional<std::string> title;
  std::vector<std::string> texts;
  std::vector<VisualAsset> visuals;

  bool has_visuals() const noexcept { return !visuals.empty() && visuals.size() == texts.size(); }
  /// Builds the Sequence directly; PreconditionError if visuals are missing.
  Sequence to_sequence() const;
};

struct IngestResult {
  std::vector<SourceSequence> sequences;
  std::vector<std::string> warnings;
};

/// [{"story_id": s, "steps": [{"text": s, "image_path": s}, ...]}]. Image
/// paths resolve against the file's directory. A step count other than five
/// is a warning; a missing or unreadable image is an IngestionError.
IngestResult parse_vist(const std::filesystem::path& file);

/// [{"title": s, "steps": [s, ...]}]. Articles without steps are skipped
/// with a warning; a missing title is an IngestionError.
IngestResult parse_wikihow(const std::filesystem::path& file);

/// [{"id": s, "task"?: s, "title"?: s, "steps": [{"text": s, "image_path"?: s}]}].
/// A record keeps its images only when every step has one.
IngestResult parse_generic(const std::filesystem::path& file);

IngestResult parse_dataset(const std::filesystem::path& file, DatasetFormat format);

}  // namespace vcot
