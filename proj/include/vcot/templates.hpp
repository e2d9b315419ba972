// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "vcot/types.hpp"

namespace vcot {

/// Contents of a file under data/ compiled into the library, e.g.
/// "templates/infill.v1.txt". Returns nullopt for unknown names.
std::optional<std::string_view> builtin_resource(std::string_view name);

/// Substitutes `{name}` placeholders. Braces that do not enclose an
/// identifier are copied through; an identifier missing from `values`
/// raises InputError.
std::string render(std::string_view tmpl, const std::map<std::string, std::string>& values);

struct PromptTemplates {
  std::string foveation_summary;  // {exemplars} {captions_and_texts}
  std::string foveation_focus;    // {summary}
  std::string infill;             // {exemplars} {focus} {prev_caption} {prev_text} {next_caption} {next_text}
  std::string cot_infill;         // {prev_text} {next_text}
  std::string extensive_summary;  // {exemplars} {captions_and_texts}
  std::string story_step;         // {exemplars} {summary} {focus} {history} {current}
  std::string instruction_step;   // {exemplars} {summary} {focus} {infillings} {current}

  static PromptTemplates builtin();
  /// Reads `<dir>/<name>.v1.txt`, falling back to the builtin per missing file.
  static PromptTemplates load(const std::filesystem::path& dir);
};

struct ExemplarSet {
  std::string foveation;
  std::string infilling;
  std::string downstream;

  static ExemplarSet builtin(TaskKind task);
  /// Reads `<dir>/<task>/{foveation,infilling,downstream}.txt` with builtin fallback.
  static ExemplarSet load(const std::filesystem::path& dir, TaskKind task);
};

}  // namespace vcot
