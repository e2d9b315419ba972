// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include "vcot/ingest.hpp"

#include <spdlog/spdlog.h>

#include <fstream>
#include <iterator>

#include <nlohmann/json.hpp>

#include "vcot/errors.hpp"
#include "vcot/png.hpp"
#include "vcot/text_util.hpp"

namespace vcot {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(DatasetFormat f) {
  switch (f) {
    case DatasetFormat::vist: return "vist";
    case DatasetFormat::wikihow: return "wikihow";
    case DatasetFormat::generic: return "generic";
  }
  return "";
}

DatasetFormat dataset_format_from_string(std::string_view s) {
  if (s == "vist") return DatasetFormat::vist;
  if (s == "wikihow") return DatasetFormat::wikihow;
  if (s == "generic") return DatasetFormat::generic;
  throw InputError("unknown dataset format: " + std::string(s));
}

Sequence SourceSequence::to_sequence() const {
  if (!has_visuals()) throw PreconditionError("sequence " + id + " has no visuals; unify it first");
  Sequence seq;
  seq.id = id;
  seq.task = task;
  seq.title = title;
  for (std::size_t i = 0; i < texts.size(); ++i) seq.elements.emplace_back(texts[i], visuals[i]);
  return seq;
}

namespace {

json read_json_array(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IngestionError("cannot open dataset " + file.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw IngestionError("dataset " + file.string() + " is not valid JSON: " + e.what());
  }
  if (!doc.is_array()) throw IngestionError("dataset " + file.string() + " must be a JSON array");
  return doc;
}

VisualAsset load_image(const fs::path& base, const std::string& rel, const std::string& where) {
  const fs::path path = fs::path(rel).is_absolute() ? fs::path(rel) : base / rel;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError(where + ": missing image file " + path.string());
  Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (!png::is_valid(bytes)) throw IngestionError(where + ": unreadable PNG " + path.string());
  return VisualAsset::from_dataset(std::move(bytes));
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key) || !obj[key].is_string())
    throw IngestionError(where + ": missing string field '" + key + "'");
  return obj[key].get<std::string>();
}

void warn(IngestResult& r, std::string msg) {
  spdlog::warn("{}", msg);
  r.warnings.push_back(std::move(msg));
}

}  // namespace

IngestResult parse_vist(const fs::path& file) {
  const json doc = read_json_array(file);
  const fs::path base = file.parent_path();
  IngestResult result;
  for (std::size_t s = 0; s < doc.size(); ++s) {
    const std::string id = string_field(doc[s], "story_id", "story " + std::to_string(s));
    if (!doc[s].contains("steps") || !doc[s]["steps"].is_array())
      throw IngestionError("story " + id + ": missing steps array");
    const auto& steps = doc[s]["steps"];
    if (steps.empty()) {
      warn(result, "story " + id + " has no steps; skipped");
      continue;
    }
    if (steps.size() != 5) warn(result, "story " + id + " has " + std::to_string(steps.size()) + " steps (expected 5)");
    SourceSequence seq;
    seq.id = id;
    seq.task = TaskKind::storytelling;
    for (std::size_t k = 0; k < steps.size(); ++k) {
      const std::string where = "story " + id + " step " + std::to_string(k);
      auto text = string_field(steps[k], "text", where);
      if (is_blank(text)) throw IngestionError(where + ": empty text");
      seq.texts.push_back(std::move(text));
      seq.visuals.push_back(load_image(base, string_field(steps[k], "image_path", where), where));
    }
    result.sequences.push_back(std::move(seq));
  }
  return result;
}

IngestResult parse_wikihow(const fs::path& file) {
  const json doc = read_json_array(file);
  IngestResult result;
  for (std::size_t a = 0; a < doc.size(); ++a) {
    const std::string where = "article " + std::to_string(a);
    SourceSequence seq;
    seq.title = string_field(doc[a], "title", where);
    seq.id = "wikihow-" + std::to_string(a);
    seq.task = TaskKind::summarization;
    if (!doc[a].contains("steps") || !doc[a]["steps"].is_array())
      throw IngestionError(where + ": missing steps array");
    for (const auto& step : doc[a]["steps"]) {
      if (!step.is_string()) throw IngestionError(where + ": steps must be strings");
      auto text = step.get<std::string>();
      if (is_blank(text)) throw IngestionError(where + ": empty step text");
      seq.texts.push_back(std::move(text));
    }
    if (seq.texts.empty()) {
      warn(result, where + " (" + *seq.title + ") has no steps; skipped");
      continue;
    }
    result.sequences.push_back(std::move(seq));
  }
  return result;
}

IngestResult parse_generic(const fs::path& file) {
  const json doc = read_json_array(file);
  const fs::path base = file.parent_path();
  IngestResult result;
  for (std::size_t r = 0; r < doc.size(); ++r) {
    SourceSequence seq;
    seq.id = string_field(doc[r], "id", "record " + std::to_string(r));
    const std::string where = "sequence " + seq.id;
    if (doc[r].contains("task")) seq.task = task_kind_from_string(string_field(doc[r], "task", where));
    if (doc[r].contains("title")) seq.title = string_field(doc[r], "title", where);
    if (!doc[r].contains("steps") || !doc[r]["steps"].is_array()) throw IngestionError(where + ": missing steps array");
    bool all_images = true;
    std::vector<VisualAsset> visuals;
    for (std::size_t k = 0; k < doc[r]["steps"].size(); ++k) {
      const auto& step = doc[r]["steps"][k];
      const std::string step_where = where + " step " + std::to_string(k);
      auto text = string_field(step, "text", step_where);
      if (is_blank(text)) throw IngestionError(step_where + ": empty text");
      seq.texts.push_back(std::move(text));
      if (step.contains("image_path"))
        visuals.push_back(load_image(base, string_field(step, "image_path", step_where), step_where));
      else
        all_images = false;
    }
    if (seq.texts.empty()) {
      warn(result, where + " has no steps; skipped");
      continue;
    }
    if (all_images) seq.visuals = std::move(visuals);
    result.sequences.push_back(std::move(seq));
  }
  return result;
}

IngestResult parse_dataset(const fs::path& file, DatasetFormat format) {
  switch (format) {
    case DatasetFormat::vist: return parse_vist(file);
    case DatasetFormat::wikihow: return parse_wikihow(file);
    case DatasetFormat::generic: return parse_generic(file);
  }
  throw InputError("unknown dataset format");
}

}  // namespace vcot
