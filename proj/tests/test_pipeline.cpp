// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <regex>

#include "support.hpp"
#include "vcot/errors.hpp"
#include "vcot/pipeline.hpp"

using namespace vcot;
using namespace vcot::testing;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

RunConfig vist_config(const fs::path& out, int depth = 2) {
  RunConfig c;
  c.dataset = kFixtureDir / "vist_two_stories.json";
  c.format = DatasetFormat::vist;
  c.out = out;
  c.seed = 7;
  c.depth = depth;
  c.workers = 2;
  return c;
}

std::vector<json> read_jsonl(const fs::path& p) {
  std::vector<json> out;
  std::istringstream in(read_file(p));
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

/// Gallery rows per sequence section of report.md.
std::vector<std::size_t> gallery_rows(const std::string& md) {
  std::vector<std::size_t> rows;
  static const std::regex row(R"(^\| \d+ \|)");
  std::istringstream in(md);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("## ", 0) == 0) rows.push_back(0);
    else if (std::regex_search(line, row) && !rows.empty()) ++rows.back();
  }
  return rows;
}

std::size_t count_method(const std::vector<json>& nodes, const std::string& method) {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [&](const json& n) { return n["method"] == method; }));
}

}  // namespace

TEST_CASE("a VIST run writes the full run directory") {
  TempDir dir;
  auto c = vist_config(dir.path() / "run");
  c.baselines = {BaselineKind::cot_plus_coi, BaselineKind::random};
  const auto s = run_pipeline(c);
  CHECK(s.sequences == 2);
  CHECK(s.failed == 0);
  CHECK(s.exit_code() == 0);
  for (const char* f : {"config.toml", "nodes.jsonl", "outputs.jsonl", "report.md", "report.html", "stats.json"})
    CHECK(fs::exists(c.out / f));
  CHECK(gallery_rows(read_file(c.out / "report.md")) == std::vector<std::size_t>{17, 17});
  const auto nodes = read_jsonl(c.out / "nodes.jsonl");
  CHECK(count_method(nodes, "vcot") == 24);
  CHECK(count_method(nodes, "cot_plus_coi") == 24);
  CHECK(count_method(nodes, "random") == 24);
  const auto report = verify_run(c.out);
  for (const auto& p : report.problems) MESSAGE(p);
  CHECK(report.ok());
  CHECK(report.nodes_checked == nodes.size());
}

TEST_CASE("depth one yields nine entries per story") {
  TempDir dir;
  const auto c = vist_config(dir.path() / "run", 1);
  run_pipeline(c);
  CHECK(gallery_rows(read_file(c.out / "report.md")) == std::vector<std::size_t>{9, 9});
  CHECK(verify_run(c.out).ok());
}

TEST_CASE("no-infill echoes the input") {
  TempDir dir;
  auto c = vist_config(dir.path() / "run");
  c.no_infill = true;
  const auto s = run_pipeline(c);
  CHECK(s.backend_calls == 0);
  CHECK(read_jsonl(c.out / "nodes.jsonl").empty());
  CHECK(gallery_rows(read_file(c.out / "report.md")) == std::vector<std::size_t>{5, 5});
  const auto md = read_file(c.out / "report.md");
  CHECK(md.find("We packed the car early for a day at the beach.") != std::string::npos);
}

TEST_CASE("runs are deterministic for a fixed seed") {
  TempDir dir;
  auto a = vist_config(dir.path() / "a");
  auto b = vist_config(dir.path() / "b");
  a.baselines = b.baselines = {BaselineKind::cot, BaselineKind::random};
  b.workers = 1;
  b.parallel_gaps = true;
  run_pipeline(a);
  run_pipeline(b);
  for (const char* f : {"nodes.jsonl", "outputs.jsonl", "report.md", "report.html"})
    CHECK(read_file(a.out / f) == read_file(b.out / f));
}

TEST_CASE("the cache makes reruns free") {
  TempDir dir;
  const auto c = vist_config(dir.path() / "run", 1);
  const auto first = run_pipeline(c);
  CHECK(first.backend_calls > 0);
  const auto nodes = read_file(c.out / "nodes.jsonl");
  const auto second = run_pipeline(c);
  CHECK(second.backend_calls == 0);
  CHECK(read_file(c.out / "nodes.jsonl") == nodes);
  fs::remove_all(c.effective_cache_dir());
  const auto third = run_pipeline(c);
  CHECK(third.backend_calls == first.backend_calls);
  CHECK(read_file(c.out / "nodes.jsonl") == nodes);
}

TEST_CASE("text-only articles are unified before infilling") {
  TempDir dir;
  RunConfig c;
  c.dataset = kFixtureDir / "wikihow_two_articles.json";
  c.format = DatasetFormat::wikihow;
  c.out = dir.path() / "run";
  c.depth = 1;
  const auto s = run_pipeline(c);
  CHECK(s.failed == 0);
  CHECK(gallery_rows(read_file(c.out / "report.md")) == std::vector<std::size_t>{11, 7});
  const auto outputs = read_jsonl(c.out / "outputs.jsonl");
  const auto instructions = std::count_if(outputs.begin(), outputs.end(), [](const json& o) {
    return o["kind"] == "instruction" && o["method"] == "vcot";
  });
  CHECK(instructions == 10);
  CHECK(verify_run(c.out).ok());
}

TEST_CASE("a failing sequence is isolated") {
  TempDir dir;
  MockOptions mo;
  mo.text_fn = [](std::string_view prompt, double temp, int k) -> std::string {
    if (prompt.find("Grandma turned ninety") != std::string_view::npos)
      return "";
    return mock_generated_text(prompt, temp, k);
  };
  auto gw = make_mock_gateway(memory_cache(), mo);
  const auto c = vist_config(dir.path() / "run", 1);
  const auto s = run_pipeline(c, gw);
  CHECK(s.sequences == 2);
  CHECK(s.failed == 1);
  CHECK(s.exit_code() == 0);
  const auto outputs = read_jsonl(c.out / "outputs.jsonl");
  CHECK(std::any_of(outputs.begin(), outputs.end(), [](const json& o) { return o["kind"] == "error"; }));
}

TEST_CASE("verification detects tampering") {
  TempDir dir;
  const auto c = vist_config(dir.path() / "run", 1);
  run_pipeline(c);
  REQUIRE(verify_run(c.out).ok());

  SUBCASE("edited asset") {
    const auto asset = fs::directory_iterator(c.out / "assets")->path();
    std::ofstream(asset, std::ios::binary | std::ios::app) << "x";
    CHECK_FALSE(verify_run(c.out).ok());
  }
  SUBCASE("edited selection") {
    auto nodes = read_jsonl(c.out / "nodes.jsonl");
    auto& n = nodes.front();
    n["candidate_index_text"] = (n["candidate_index_text"].get<int>() + 1) % 5;
    std::string text;
    for (const auto& r : nodes) text += r.dump() + "\n";
    std::ofstream(c.out / "nodes.jsonl", std::ios::binary | std::ios::trunc) << text;
    CHECK_FALSE(verify_run(c.out).ok());
  }
  SUBCASE("dropped node") {
    auto nodes = read_jsonl(c.out / "nodes.jsonl");
    nodes.erase(nodes.begin());
    std::string text;
    for (const auto& r : nodes) text += r.dump() + "\n";
    std::ofstream(c.out / "nodes.jsonl", std::ios::binary | std::ios::trunc) << text;
    CHECK_FALSE(verify_run(c.out).ok());
  }
  SUBCASE("edited prompt") {
    auto outputs = read_jsonl(c.out / "outputs.jsonl");
    for (auto& o : outputs)
      if (o.contains("prompt")) {
        o["prompt"] = o["prompt"].get<std::string>() + " ";
        break;
      }
    std::string text;
    for (const auto& r : outputs) text += r.dump() + "\n";
    std::ofstream(c.out / "outputs.jsonl", std::ios::binary | std::ios::trunc) << text;
    CHECK_FALSE(verify_run(c.out).ok());
  }
}

TEST_CASE("invalid configs are rejected before any work") {
  TempDir dir;
  auto c = vist_config(dir.path() / "run");
  c.depth = 0;
  CHECK_THROWS_AS(run_pipeline(c), InputError);
  CHECK_FALSE(fs::exists(c.out));
}
