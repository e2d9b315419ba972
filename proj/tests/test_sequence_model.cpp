// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "support.hpp"
#include "vcot/errors.hpp"
#include "vcot/recursion.hpp"
#include "vcot/types.hpp"

using namespace vcot;
using namespace vcot::testing;

namespace {

InfillingNode node_at(std::size_t gap, int depth, const std::string& text) {
  InfillingNode n;
  n.text = text;
  n.visual = dataset_asset(40 + depth);
  n.depth = depth;
  n.gap_index = gap;
  return n;
}

/// Independent count: a node at depth k spawns two children while k < d.
std::size_t reference_count(int depth, int limit) {
  if (depth > limit) return 0;
  return 1 + 2 * reference_count(depth + 1, limit);
}

/// Builds the per-gap depth order with bisect_gap over integer midpoints.
std::vector<int> unrolled_depths(int limit) {
  auto generate = [](double a, double b, int depth) { return std::pair<double, int>{(a + b) / 2.0, depth}; };
  auto endpoint_of = [](const std::pair<double, int>& n) { return n.first; };
  const auto nodes = bisect_gap<double, std::pair<double, int>>(0.0, 1.0, 1, limit, generate, endpoint_of, false);
  std::vector<int> depths;
  double last = 0.0;
  for (const auto& [x, d] : nodes) {
    CHECK(x > last);  // in-order positions are strictly increasing
    last = x;
    depths.push_back(d);
  }
  return depths;
}

}  // namespace

TEST_CASE("visual assets are content addressed and validated") {
  const Bytes png = solid_png(1, 2, 3);
  const auto a = VisualAsset::from_dataset(png);
  CHECK(a.id() == sha256_hex(png));
  CHECK(a.id().size() == 64);
  CHECK(a.source() == AssetSource::dataset);
  CHECK_FALSE(a.prompt().has_value());

  const auto g = VisualAsset::generated(png, "a red barn");
  CHECK(g.id() == a.id());
  CHECK(g.prompt() == "a red barn");

  CHECK_THROWS_AS(VisualAsset::from_dataset({}), PreconditionError);
  CHECK_THROWS_AS(VisualAsset::from_dataset(Bytes{1, 2, 3, 4}), PreconditionError);
}

TEST_CASE("pairs reject blank text and keep captions separate") {
  CHECK_THROWS_AS(TextVisualPair("   \n\t", dataset_asset(0)), InputError);
  const TextVisualPair p("Walk the dog.", dataset_asset(0));
  CHECK_FALSE(p.caption().has_value());
  const auto q = p.with_caption("a picture of a dog");
  CHECK(q.caption() == "a picture of a dog");
  CHECK(q.text() == p.text());
  CHECK_FALSE(p.caption().has_value());
}

TEST_CASE("merge_gap_results splices gaps in order") {
  SUBCASE("five originals with three nodes per gap") {
    const auto seq = make_sequence(5);
    std::vector<std::vector<InfillingNode>> per_gap(4);
    for (std::size_t g = 0; g < 4; ++g)
      for (int d : {2, 1, 2}) per_gap[g].push_back(node_at(g, d, "n" + std::to_string(g) + std::to_string(d)));
    const auto aug = merge_gap_results(seq, per_gap);
    CHECK(aug.merged.size() == 17);
    CHECK(aug.infillings.size() == 12);
    CHECK(aug.merged[0].tag == Provenance::original);
    CHECK(aug.merged[4].tag == Provenance::original);
    CHECK(aug.merged[4].index == 1);
    CHECK(aug.gap_nodes(2).size() == 3);
  }
  SUBCASE("singleton has no gaps") {
    const auto aug = merge_gap_results(make_sequence(1), {});
    CHECK(aug.merged.size() == 1);
    CHECK(aug.infillings.empty());
  }
  SUBCASE("two originals with one node") {
    const auto seq = make_sequence(2);
    const auto aug = merge_gap_results(seq, {{node_at(0, 1, "bridge")}});
    REQUIRE(aug.merged.size() == 3);
    CHECK(aug.merged[0] == MergedEntry{Provenance::original, 0});
    CHECK(aug.merged[1] == MergedEntry{Provenance::infilled, 0});
    CHECK(aug.merged[2] == MergedEntry{Provenance::original, 1});
  }
  SUBCASE("gap list count must match") {
    CHECK_THROWS_AS(merge_gap_results(make_sequence(3), {{}}), StructuralError);
    CHECK_THROWS_AS(merge_gap_results(make_sequence(1), {{}}), StructuralError);
  }
}

TEST_CASE("depth-limited bisection matches hand unrolling") {
  CHECK(unrolled_depths(1) == std::vector<int>{1});
  CHECK(unrolled_depths(2) == std::vector<int>{2, 1, 2});
  CHECK(unrolled_depths(3) == std::vector<int>{3, 2, 3, 1, 3, 2, 3});
}

TEST_CASE("node counts per gap and merged length over depths 1..3") {
  for (int d = 1; d <= 3; ++d) {
    CAPTURE(d);
    const std::size_t per_gap = unrolled_depths(d).size();
    CHECK(per_gap == reference_count(1, d));
    CHECK(per_gap == (std::size_t{1} << d) - 1);
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto seq = make_sequence(n);
      std::vector<std::vector<InfillingNode>> gaps(seq.gap_count());
      for (std::size_t g = 0; g < gaps.size(); ++g)
        for (int depth : unrolled_depths(d)) gaps[g].push_back(node_at(g, depth, "x"));
      const auto aug = merge_gap_results(seq, gaps);
      CHECK(aug.merged.size() == n + (n - 1) * per_gap);
      CHECK(aug.merged.size() == expected_merged_length(n, d));
      // Removing infillings gives the input back.
      CHECK(strip_infillings(aug) == seq.elements);
    }
  }
}

TEST_CASE("parallel bisection returns the serial order") {
  auto generate = [](double a, double b, int depth) { return std::pair<double, int>{(a + b) / 2.0, depth}; };
  auto endpoint_of = [](const std::pair<double, int>& n) { return n.first; };
  for (int d = 1; d <= 4; ++d) {
    auto serial = bisect_gap<double, std::pair<double, int>>(0.0, 1.0, 1, d, generate, endpoint_of, false);
    auto parallel = bisect_gap<double, std::pair<double, int>>(0.0, 1.0, 1, d, generate, endpoint_of, true);
    CHECK(serial == parallel);
  }
  const auto squares = map_indexed(8, true, [](std::size_t i) { return i * i; });
  CHECK(squares == std::vector<std::size_t>{0, 1, 4, 9, 16, 25, 36, 49});
}

TEST_CASE("recursion policy and enum names") {
  CHECK_THROWS_AS(RecursionPolicy{0}.validate(), PreconditionError);
  CHECK_NOTHROW(RecursionPolicy{}.validate());
  CHECK(RecursionPolicy{}.depth_limit == 2);
  CHECK(task_kind_from_string("summarization") == TaskKind::summarization);
  CHECK(to_string(TaskKind::storytelling) == "storytelling");
  CHECK_THROWS_AS(task_kind_from_string("poetry"), InputError);
}

TEST_CASE("infilling nodes expose a pair only when complete") {
  InfillingNode n;
  n.text = "only text";
  CHECK_FALSE(n.is_complete_pair());
  CHECK_THROWS_AS(n.pair(), PreconditionError);
  n.visual = dataset_asset(3);
  CHECK(n.pair().text() == "only text");
}
