// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "vcot/hashing.hpp"
#include "vcot/pipeline.hpp"
#include "vcot/png.hpp"
#include "vcot/unification.hpp"

namespace vcot {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<json> read_jsonl(const fs::path& p, std::vector<std::string>& problems) {
  std::vector<json> out;
  std::ifstream in(p);
  if (!in) {
    problems.push_back("missing " + p.filename().string());
    return out;
  }
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::exception& e) {
      problems.push_back(p.filename().string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<double> scores_from(const json& arr) {
  std::vector<double> out;
  for (const auto& v : arr) out.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>());
  return out;
}

/// In-order depths of one gap's subtree.
void inorder_depths(int depth, int limit, std::vector<int>& out) {
  if (depth > limit) return;
  inorder_depths(depth + 1, limit, out);
  out.push_back(depth);
  inorder_depths(depth + 1, limit, out);
}

void check_selection(const json& n, const char* scores_key, const char* index_key, const char* score_key,
                     const std::string& where, std::vector<std::string>& problems) {
  const auto scores = scores_from(n.at(scores_key));
  if (scores.empty()) return;
  std::size_t expect;
  try {
    expect = argmax_lowest(scores);
  } catch (const std::exception&) {
    problems.push_back(where + ": no eligible " + std::string(scores_key));
    return;
  }
  if (n.at(index_key).get<std::size_t>() != expect)
    problems.push_back(where + ": " + index_key + " is not the lowest-index argmax");
  else if (!n.at(score_key).is_null() && n.at(score_key).get<double>() != scores[expect])
    problems.push_back(where + ": " + score_key + " differs from the chosen candidate's score");
}

}  // namespace

VerifyReport verify_run(const fs::path& run_dir) {
  VerifyReport rep;
  auto& problems = rep.problems;

  int depth = 0;
  bool no_infill = false;
  try {
    const RunConfig cfg = load_config(run_dir / "config.toml");
    depth = cfg.depth;
    no_infill = cfg.no_infill;
  } catch (const std::exception& e) {
    problems.push_back(std::string("config.toml: ") + e.what());
  }

  std::set<std::string> assets;
  const fs::path asset_dir = run_dir / "assets";
  if (fs::is_directory(asset_dir)) {
    for (const auto& entry : fs::directory_iterator(asset_dir)) {
      if (entry.path().extension() != ".png") continue;
      ++rep.assets_checked;
      const std::string stem = entry.path().stem().string();
      const std::string bytes = slurp(entry.path());
      const std::span<const std::uint8_t> view(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size());
      if (sha256_hex(bytes) != stem) problems.push_back("asset " + stem + ": hash mismatch");
      if (!png::is_valid(view)) problems.push_back("asset " + stem + ": not a valid PNG");
      assets.insert(stem);
    }
  } else {
    problems.push_back("missing assets/");
  }

  // (sequence, method) -> gap -> depths in file order
  std::map<std::pair<std::string, std::string>, std::map<std::size_t, std::vector<int>>> gaps;
  for (const auto& n : read_jsonl(run_dir / "nodes.jsonl", problems)) {
    ++rep.nodes_checked;
    try {
      const std::string seq = n.at("sequence_id").get<std::string>();
      const std::string method = n.at("method").get<std::string>();
      const std::string where = seq + "/" + method + "@" + std::to_string(n.at("position").get<std::size_t>());
      if (!n.at("visual_id").is_null() && !assets.count(n.at("visual_id").get<std::string>()))
        problems.push_back(where + ": visual_id has no asset");
      if (method == "vcot") {
        check_selection(n, "text_candidate_scores", "candidate_index_text", "text_score", where, problems);
        check_selection(n, "visual_candidate_scores", "candidate_index_visual", "visual_score", where, problems);
      }
      gaps[{seq, method}][n.at("gap_index").get<std::size_t>()].push_back(n.at("depth").get<int>());
    } catch (const json::exception& e) {
      problems.push_back(std::string("nodes.jsonl: ") + e.what());
    }
  }
  if (depth > 0 && !no_infill) {
    std::vector<int> pattern;
    inorder_depths(1, depth, pattern);
    for (const auto& [key, per_gap] : gaps) {
      std::size_t expected_gap = 0;
      for (const auto& [gap, depths] : per_gap) {
        const std::string where = key.first + "/" + key.second + " gap " + std::to_string(gap);
        if (gap != expected_gap) problems.push_back(where + ": gap indices are not contiguous");
        expected_gap = gap + 1;
        if (depths.size() != pattern.size())
          problems.push_back(where + ": " + std::to_string(depths.size()) + " nodes, expected " +
                             std::to_string(pattern.size()));
        else if (depths != pattern)
          problems.push_back(where + ": depth order is not in-order");
      }
    }
  }

  for (const auto& o : read_jsonl(run_dir / "outputs.jsonl", problems)) {
    ++rep.outputs_checked;
    try {
      const std::string kind = o.at("kind").get<std::string>();
      const std::string where = o.at("sequence_id").get<std::string>() + "/" + kind;
      if (kind == "foveation") {
        const auto ll = o.at("candidate_logliks").get<std::vector<double>>();
        const auto chosen = o.at("chosen").get<std::size_t>();
        if (ll.empty() || chosen != argmax_lowest(ll))
          problems.push_back(where + ": chosen summary is not the likelihood argmax");
        else if (o.at("summary_loglik").get<double>() != ll[chosen])
          problems.push_back(where + ": summary_loglik differs from the chosen candidate");
        else if (o.at("summary").get<std::string>() != o.at("candidates").at(chosen).get<std::string>())
          problems.push_back(where + ": summary differs from the chosen candidate");
      } else if (o.contains("prompt")) {
        if (sha256_hex(o.at("prompt").get<std::string>()) != o.at("prompt_sha256").get<std::string>())
          problems.push_back(where + " " + std::to_string(o.value("step_index", 0)) + ": prompt_sha256 mismatch");
      }
    } catch (const std::exception& e) {
      problems.push_back(std::string("outputs.jsonl: ") + e.what());
    }
  }
  return rep;
}

}  // namespace vcot
