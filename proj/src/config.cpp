// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include "vcot/config.hpp"

#include <toml.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "vcot/errors.hpp"
#include "vcot/text_util.hpp"

namespace vcot {

namespace fs = std::filesystem;

void RunConfig::validate() const {
  if (depth < 1) throw InputError("depth must be >= 1");
  if (text_candidates < 1 || image_candidates < 1 || unify_candidates < 1 || summary_candidates < 1)
    throw InputError("candidate counts must be >= 1");
  if (workers < 1) throw InputError("workers must be >= 1");
  if (max_tokens_infill < 1 || max_tokens_summary < 1) throw InputError("max_tokens must be >= 1");
  if (backend != kMockEndpoint && !profiles.count(backend)) throw InputError("unknown backend profile '" + backend + "'");
}

BackendProfile RunConfig::resolve_profile() const {
  BackendProfile p = backend == kMockEndpoint && !profiles.count(backend) ? BackendProfile::mock()
                                                                          : profiles.at(backend);
  if (const char* key = std::getenv("VCOT_API_KEY"); key && *key) p.bearer_token = key;
  return p;
}

std::vector<BaselineKind> parse_baseline_list(std::string_view comma_separated) {
  std::vector<BaselineKind> out;
  std::size_t start = 0;
  while (start <= comma_separated.size()) {
    const auto end = std::min(comma_separated.find(',', start), comma_separated.size());
    const auto item = trim(comma_separated.substr(start, end - start));
    if (!item.empty()) out.push_back(baseline_kind_from_string(item));
    start = end + 1;
  }
  return out;
}

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

template <typename T>
void read(const toml::table& t, const char* key, T& out) {
  if (auto v = t[key].value<T>()) out = *v;
}

BackendProfile parse_profile(const std::string& name, const toml::table& t) {
  BackendProfile p;
  p.id = name;
  read(t, "text_endpoint", p.text_endpoint);
  read(t, "image_endpoint", p.image_endpoint);
  read(t, "caption_endpoint", p.caption_endpoint);
  read(t, "embed_endpoint", p.embed_endpoint);
  if (auto all = t["endpoint"].value<std::string>())
    p.text_endpoint = p.image_endpoint = p.caption_endpoint = p.embed_endpoint = *all;
  read(t, "default_temperature", p.default_temperature);
  read(t, "retry_limit", p.retry_limit);
  if (auto v = t["timeout_s"].value<double>()) p.timeout = std::chrono::duration<double>(*v);
  if (auto v = t["backoff_ms"].value<std::int64_t>()) p.backoff_base = std::chrono::milliseconds(*v);
  if (auto v = t["embed_dim"].value<int>()) p.embed_dim = *v;
  p.validate();
  return p;
}

}  // namespace

RunConfig parse_config(std::string_view toml_text, const fs::path& base_dir) {
  toml::table root;
  try {
    root = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "config: " << e.description() << " at " << e.source().begin;
    throw InputError(os.str());
  }
  RunConfig c;
  if (const auto* run = root["run"].as_table()) {
    const auto& t = *run;
    if (auto v = t["dataset"].value<std::string>()) c.dataset = resolve(base_dir, *v);
    if (auto v = t["format"].value<std::string>()) c.format = dataset_format_from_string(*v);
    if (auto v = t["out"].value<std::string>()) c.out = resolve(base_dir, *v);
    read(t, "seed", c.seed);
    read(t, "depth", c.depth);
    read(t, "text_candidates", c.text_candidates);
    read(t, "image_candidates", c.image_candidates);
    read(t, "unify_candidates", c.unify_candidates);
    read(t, "summary_candidates", c.summary_candidates);
    read(t, "backend", c.backend);
    read(t, "workers", c.workers);
    read(t, "no_infill", c.no_infill);
    read(t, "parallel_gaps", c.parallel_gaps);
    read(t, "max_tokens_infill", c.max_tokens_infill);
    read(t, "max_tokens_summary", c.max_tokens_summary);
    if (const auto* arr = t["baselines"].as_array()) {
      for (const auto& b : *arr) {
        auto s = b.value<std::string>();
        if (!s) throw InputError("config: baselines must be strings");
        c.baselines.push_back(baseline_kind_from_string(*s));
      }
    }
    if (auto v = t["text_target"].value<std::string>()) {
      if (*v == "neighbor_text")
        c.text_target = TextScoreTarget::neighbor_text;
      else if (*v == "neighbor_visual")
        c.text_target = TextScoreTarget::neighbor_visual;
      else
        throw InputError("config: text_target must be neighbor_text or neighbor_visual");
    }
    if (auto v = t["unify_aggregator"].value<std::string>()) {
      if (*v == "mean")
        c.unify_aggregator = NeighborAggregator::mean;
      else if (*v == "min")
        c.unify_aggregator = NeighborAggregator::min;
      else
        throw InputError("config: unify_aggregator must be mean or min");
    }
    if (auto v = t["templates_dir"].value<std::string>(); v && !v->empty()) c.templates_dir = resolve(base_dir, *v);
    if (auto v = t["exemplars_dir"].value<std::string>(); v && !v->empty()) c.exemplars_dir = resolve(base_dir, *v);
    if (auto v = t["cache_dir"].value<std::string>(); v && !v->empty()) c.cache_dir = resolve(base_dir, *v);
  }
  if (const auto* profiles = root["profiles"].as_table()) {
    for (const auto& [name, node] : *profiles) {
      const auto* t = node.as_table();
      if (!t) throw InputError("config: profiles." + std::string(name.str()) + " must be a table");
      c.profiles.emplace(std::string(name.str()), parse_profile(std::string(name.str()), *t));
    }
  }
  return c;
}

RunConfig load_config(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("cannot open config " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), file.parent_path());
}

std::string config_to_toml(const RunConfig& c) {
  toml::array baselines;
  for (auto b : c.baselines) baselines.push_back(std::string(to_string(b)));
  toml::table run{
      {"dataset", c.dataset.generic_string()},
      {"format", std::string(to_string(c.format))},
      {"out", c.out.generic_string()},
      {"seed", c.seed},
      {"depth", c.depth},
      {"text_candidates", c.text_candidates},
      {"image_candidates", c.image_candidates},
      {"unify_candidates", c.unify_candidates},
      {"summary_candidates", c.summary_candidates},
      {"backend", c.backend},
      {"baselines", baselines},
      {"workers", c.workers},
      {"no_infill", c.no_infill},
      {"parallel_gaps", c.parallel_gaps},
      {"text_target", c.text_target == TextScoreTarget::neighbor_text ? "neighbor_text" : "neighbor_visual"},
      {"unify_aggregator", c.unify_aggregator == NeighborAggregator::mean ? "mean" : "min"},
      {"max_tokens_infill", c.max_tokens_infill},
      {"max_tokens_summary", c.max_tokens_summary},
  };
  if (c.templates_dir) run.insert("templates_dir", c.templates_dir->generic_string());
  if (c.exemplars_dir) run.insert("exemplars_dir", c.exemplars_dir->generic_string());
  if (c.cache_dir) run.insert("cache_dir", c.cache_dir->generic_string());
  toml::table profiles;
  for (const auto& [name, p] : c.profiles) {
    toml::table t{{"text_endpoint", p.text_endpoint},
                  {"image_endpoint", p.image_endpoint},
                  {"caption_endpoint", p.caption_endpoint},
                  {"embed_endpoint", p.embed_endpoint},
                  {"default_temperature", p.default_temperature},
                  {"retry_limit", p.retry_limit},
                  {"timeout_s", p.timeout.count()},
                  {"backoff_ms", static_cast<std::int64_t>(p.backoff_base.count())}};
    if (p.embed_dim) t.insert("embed_dim", *p.embed_dim);
    profiles.insert(name, std::move(t));
  }
  toml::table root{{"run", std::move(run)}};
  if (!profiles.empty()) root.insert("profiles", std::move(profiles));
  std::ostringstream os;
  os << root << '\n';
  return os.str();
}

}  // namespace vcot
