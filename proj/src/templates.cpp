// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include "vcot/templates.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "vcot/errors.hpp"

namespace vcot {
namespace {

std::string builtin_or_throw(const std::string& name) {
  auto r = builtin_resource(name);
  if (!r) throw Error("missing builtin resource " + name);
  return std::string(*r);
}

std::string read_or_builtin(const std::filesystem::path& file, const std::string& builtin_name) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return builtin_or_throw(builtin_name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::string render(std::string_view tmpl, const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      std::size_t j = i + 1;
      while (j < tmpl.size() && is_ident_char(tmpl[j])) ++j;
      if (j > i + 1 && j < tmpl.size() && tmpl[j] == '}') {
        const std::string name(tmpl.substr(i + 1, j - i - 1));
        auto it = values.find(name);
        if (it == values.end()) throw InputError("template placeholder {" + name + "} has no value");
        out += it->second;
        i = j + 1;
        continue;
      }
    }
    out.push_back(tmpl[i++]);
  }
  return out;
}

PromptTemplates PromptTemplates::builtin() {
  return {builtin_or_throw("templates/foveation_summary.v1.txt"), builtin_or_throw("templates/foveation_focus.v1.txt"),
          builtin_or_throw("templates/infill.v1.txt"),            builtin_or_throw("templates/cot_infill.v1.txt"),
          builtin_or_throw("templates/extensive_summary.v1.txt"), builtin_or_throw("templates/story_step.v1.txt"),
          builtin_or_throw("templates/instruction_step.v1.txt")};
}

PromptTemplates PromptTemplates::load(const std::filesystem::path& dir) {
  auto get = [&](const char* stem) {
    const std::string file = std::string(stem) + ".v1.txt";
    return read_or_builtin(dir / file, "templates/" + file);
  };
  return {get("foveation_summary"), get("foveation_focus"),   get("infill"),          get("cot_infill"),
          get("extensive_summary"), get("story_step"),        get("instruction_step")};
}

ExemplarSet ExemplarSet::builtin(TaskKind task) {
  const std::string base = "exemplars/" + std::string(to_string(task)) + "/";
  return {builtin_or_throw(base + "foveation.txt"), builtin_or_throw(base + "infilling.txt"),
          builtin_or_throw(base + "downstream.txt")};
}

ExemplarSet ExemplarSet::load(const std::filesystem::path& dir, TaskKind task) {
  const std::string t(to_string(task));
  auto get = [&](const char* name) { return read_or_builtin(dir / t / name, "exemplars/" + t + "/" + name); };
  return {get("foveation.txt"), get("infilling.txt"), get("downstream.txt")};
}

}  // namespace vcot
