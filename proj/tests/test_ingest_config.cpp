// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "support.hpp"
#include "vcot/config.hpp"
#include "vcot/errors.hpp"
#include "vcot/ingest.hpp"

using namespace vcot;
using namespace vcot::testing;
namespace fs = std::filesystem;

namespace {

void write(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

}  // namespace

TEST_CASE("VIST fixture loads two five-step stories") {
  const auto r = parse_vist(kFixtureDir / "vist_two_stories.json");
  REQUIRE(r.sequences.size() == 2);
  CHECK(r.warnings.empty());
  CHECK(r.sequences[0].id == "story-beach");
  CHECK(r.sequences[1].id == "story-birthday");
  for (const auto& s : r.sequences) {
    CHECK(s.task == TaskKind::storytelling);
    CHECK(s.texts.size() == 5);
    CHECK(s.has_visuals());
    const auto seq = s.to_sequence();
    CHECK(seq.elements.size() == 5);
    CHECK(seq.elements[0].visual().source() == AssetSource::dataset);
  }
  const auto& first = r.sequences[0].visuals[0];
  CHECK(first.id() == sha256_hex(read_file(kFixtureDir / "vist_images" / "story-beach-0.png")));
  CHECK(parse_dataset(kFixtureDir / "vist_two_stories.json", DatasetFormat::vist).sequences.size() == 2);
}

TEST_CASE("VIST edge cases") {
  TempDir dir;
  fs::copy_file(kFixtureDir / "vist_images" / "story-beach-0.png", dir.path() / "a.png");
  write(dir.path() / "bad.png", "not a png");

  write(dir.path() / "empty.json", "[]");
  CHECK(parse_vist(dir.path() / "empty.json").sequences.empty());

  write(dir.path() / "short.json", R"([{"story_id":"s","steps":[{"text":"one","image_path":"a.png"},
                                                              {"text":"two","image_path":"a.png"}]}])");
  const auto s = parse_vist(dir.path() / "short.json");
  CHECK(s.sequences.size() == 1);
  CHECK(s.warnings.size() == 1);

  write(dir.path() / "missing.json", R"([{"story_id":"s","steps":[{"text":"one","image_path":"nope.png"}]}])");
  CHECK_THROWS_AS(parse_vist(dir.path() / "missing.json"), IngestionError);
  write(dir.path() / "corrupt.json", R"([{"story_id":"s","steps":[{"text":"one","image_path":"bad.png"}]}])");
  CHECK_THROWS_AS(parse_vist(dir.path() / "corrupt.json"), IngestionError);
  write(dir.path() / "garbage.json", "{not json");
  CHECK_THROWS_AS(parse_vist(dir.path() / "garbage.json"), IngestionError);
  CHECK_THROWS_AS(parse_vist(dir.path() / "absent.json"), IngestionError);
}

TEST_CASE("wikiHow fixture loads text-only articles") {
  const auto r = parse_wikihow(kFixtureDir / "wikihow_two_articles.json");
  REQUIRE(r.sequences.size() == 2);
  CHECK(r.sequences[0].title == "How to Make Pancakes");
  CHECK(r.sequences[0].texts.size() == 6);
  CHECK(r.sequences[1].texts.size() == 4);
  for (const auto& s : r.sequences) {
    CHECK(s.task == TaskKind::summarization);
    CHECK_FALSE(s.has_visuals());
    CHECK_THROWS_AS(s.to_sequence(), PreconditionError);
  }
}

TEST_CASE("wikiHow edge cases") {
  TempDir dir;
  write(dir.path() / "w.json", R"([{"title":"Empty","steps":[]},{"title":"Ok","steps":["a","b"]}])");
  const auto r = parse_wikihow(dir.path() / "w.json");
  CHECK(r.sequences.size() == 1);
  CHECK(r.warnings.size() == 1);
  write(dir.path() / "t.json", R"([{"steps":["a","b"]}])");
  CHECK_THROWS_AS(parse_wikihow(dir.path() / "t.json"), IngestionError);
}

TEST_CASE("generic records keep images only when complete") {
  TempDir dir;
  fs::copy_file(kFixtureDir / "vist_images" / "story-beach-0.png", dir.path() / "a.png");
  write(dir.path() / "g.json", R"([
    {"id":"full","task":"storytelling","steps":[{"text":"x","image_path":"a.png"},{"text":"y","image_path":"a.png"}]},
    {"id":"partial","steps":[{"text":"x","image_path":"a.png"},{"text":"y"}]}])");
  const auto r = parse_generic(dir.path() / "g.json");
  REQUIRE(r.sequences.size() == 2);
  CHECK(r.sequences[0].has_visuals());
  CHECK(r.sequences[0].task == TaskKind::storytelling);
  CHECK_FALSE(r.sequences[1].has_visuals());
  CHECK(r.sequences[1].task == TaskKind::generic);
}

TEST_CASE("TOML config parsing") {
  const auto c = parse_config(R"(
[run]
dataset = "data/stories.json"
format = "wikihow"
out = "runs/a"
seed = 7
depth = 3
text_candidates = 2
baselines = ["cot", "random"]
text_target = "neighbor_visual"
unify_aggregator = "min"
backend = "lab"

[profiles.lab]
endpoint = "http://127.0.0.1:8000"
retry_limit = 5
embed_dim = 512
)",
                              "/base");
  CHECK(c.dataset == fs::path("/base/data/stories.json"));
  CHECK(c.out == fs::path("/base/runs/a"));
  CHECK(c.format == DatasetFormat::wikihow);
  CHECK(c.seed == 7);
  CHECK(c.depth == 3);
  CHECK(c.text_candidates == 2);
  CHECK(c.image_candidates == 4);
  CHECK(c.baselines == std::vector<BaselineKind>{BaselineKind::cot, BaselineKind::random});
  CHECK(c.text_target == TextScoreTarget::neighbor_visual);
  CHECK(c.unify_aggregator == NeighborAggregator::min);
  CHECK(c.effective_cache_dir() == fs::path("/base/runs/a/cache"));
  const auto p = c.resolve_profile();
  CHECK(p.id == "lab");
  CHECK(p.text_endpoint == "http://127.0.0.1:8000");
  CHECK(p.embed_endpoint == "http://127.0.0.1:8000");
  CHECK(p.retry_limit == 5);
  CHECK(p.embed_dim == 512);
  c.validate();
}

TEST_CASE("config rejects invalid settings") {
  CHECK_THROWS_AS(parse_config("[run]\ndepth = 0\n").validate(), InputError);
  CHECK_THROWS_AS(parse_config("[run]\ntext_candidates = 0\n").validate(), InputError);
  CHECK_THROWS_AS(parse_config("[run]\nbackend = \"nowhere\"\n").validate(), InputError);
  CHECK_THROWS_AS(parse_config("[run]\nformat = \"csv\"\n"), InputError);
  CHECK_THROWS_AS(parse_config("[run\n"), InputError);
  CHECK_THROWS_AS(parse_baseline_list("cot,sideways"), InputError);
  CHECK(parse_baseline_list("cot_plus_coi, no_infilling") ==
        std::vector<BaselineKind>{BaselineKind::cot_plus_coi, BaselineKind::no_infilling});
  CHECK(parse_baseline_list("").empty());
}

TEST_CASE("config round-trips through TOML") {
  RunConfig c;
  c.dataset = "/d/x.json";
  c.out = "/o";
  c.seed = 42;
  c.depth = 1;
  c.baselines = {BaselineKind::coi, BaselineKind::no_infilling};
  c.no_infill = true;
  c.unify_aggregator = NeighborAggregator::min;
  c.cache_dir = "/c";
  const auto back = parse_config(config_to_toml(c), "/elsewhere");
  CHECK(back.dataset == c.dataset);
  CHECK(back.out == c.out);
  CHECK(back.seed == 42);
  CHECK(back.depth == 1);
  CHECK(back.baselines == c.baselines);
  CHECK(back.no_infill);
  CHECK(back.unify_aggregator == NeighborAggregator::min);
  CHECK(back.cache_dir == c.cache_dir);
  CHECK(config_to_toml(back) == config_to_toml(c));
}

TEST_CASE("load_config resolves against the file directory") {
  TempDir dir;
  write(dir.path() / "c.toml", "[run]\ndataset = \"in.json\"\n");
  CHECK(load_config(dir.path() / "c.toml").dataset == dir.path() / "in.json");
  CHECK_THROWS_AS(load_config(dir.path() / "none.toml"), InputError);
}
