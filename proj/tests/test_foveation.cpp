// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "support.hpp"
#include "vcot/errors.hpp"
#include "vcot/foveation.hpp"

using namespace vcot;
using namespace vcot::testing;

namespace {

const PromptTemplates& templates() {
  static const PromptTemplates t = PromptTemplates::builtin();
  return t;
}

const ExemplarSet& story_exemplars() {
  static const ExemplarSet e = ExemplarSet::builtin(TaskKind::storytelling);
  return e;
}

bool is_summary_prompt(std::string_view p) { return p.find("Write a short summary") != std::string_view::npos; }

}  // namespace

TEST_CASE("joint log-likelihood is the plain sum") {
  CHECK(joint_log_likelihood(std::vector<double>{}) == 0.0);
  CHECK(joint_log_likelihood(std::vector<double>{-0.5, -0.25, -0.25}) == -1.0);
  CHECK(joint_log_likelihood(std::vector<double>{-0.05, -0.05}) > joint_log_likelihood(std::vector<double>{-0.1, -0.2}));
  CHECK_THROWS_AS(joint_log_likelihood(std::vector<double>{-0.1, 0.2}), InputError);
  CHECK_THROWS_AS(joint_log_likelihood(std::vector<double>{-INFINITY}), InputError);
  CHECK_THROWS_AS(joint_log_likelihood(std::vector<double>{std::nan("")}), InputError);

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> lp(-12.0, 0.0);
  std::uniform_int_distribution<int> len(0, 300);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> v(static_cast<std::size_t>(len(rng)));
    long double direct = 0.0L;
    for (auto& x : v) {
      x = lp(rng);
      direct += x;
    }
    CHECK(std::abs(joint_log_likelihood(v) - static_cast<double>(direct)) <= 1e-12 * std::max(1.0L, -direct));
  }
}

TEST_CASE("projection preserves order and reuses cached captions") {
  auto t = std::make_shared<MockTransport>();
  Gateway gw(BackendProfile::mock(), {t, t, t, t}, memory_cache());
  const auto seq = make_sequence(5);
  const auto projected = project_to_text(seq, gw);
  REQUIRE(projected.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(projected[i].text == seq.elements[i].text());
    CHECK(projected[i].caption == "a picture of " + seq.elements[i].visual().id().substr(0, 8));
  }
  const auto calls = t->calls();
  Sequence captioned = seq;
  captioned.elements[2] = captioned.elements[2].with_caption("hand-written caption");
  gw.cache().clear();
  const auto again = project_to_text(captioned, gw);
  CHECK(again[2].caption == "hand-written caption");
  CHECK(t->calls() == calls + 4);
  CHECK_THROWS_AS(project_to_text(Sequence{}, gw), PreconditionError);
}

TEST_CASE("formatting of caption and text") {
  CHECK(format_captioned({"a dog", "Walk the dog."}) == "Caption: a dog | Text: Walk the dog.");
  CHECK(format_captioned({"", "Walk the dog."}) == "Text: Walk the dog.");
  CHECK(format_captioned({"a dog", ""}) == "Caption: a dog");
  CHECK(format_captions_and_texts({{"c1", "t1"}, {"c2", "t2"}}) == "Step 1: Caption: c1 | Text: t1\nStep 2: Caption: c2 | Text: t2");
}

TEST_CASE("the shortest summary wins under the mock's logprobs") {
  MockOptions mo;
  mo.text_fn = [](std::string_view prompt, double temp, int k) -> std::string {
    if (!is_summary_prompt(prompt)) return mock_generated_text(prompt, temp, k);
    static const char* lengths[] = {"a b c d", "a b", "a b c"};
    return lengths[k];
  };
  auto gw = make_mock_gateway(nullptr, mo);
  const auto run = multipoint_foveation_detailed(make_sequence(3), story_exemplars(), templates(), gw);
  REQUIRE(run.candidates.size() == 3);
  CHECK(run.chosen == 1);
  CHECK(run.foveation.summary == "a b");
  CHECK(run.foveation.summary_loglik == doctest::Approx(-0.3).epsilon(1e-12));
  CHECK(run.logliks[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(run.logliks[2] == doctest::Approx(-0.6).epsilon(1e-12));
  for (double ll : run.logliks) CHECK(run.foveation.summary_loglik >= ll);
  CHECK(run.focus_prompt.find("Summary: a b\n") != std::string::npos);
  CHECK(run.focus_prompt.find("List the recurring characters, setting, and objects in this summary as one line:") !=
        std::string::npos);
}

TEST_CASE("equal-length summaries resolve to the first") {
  auto gw = make_mock_gateway();
  const auto run = multipoint_foveation_detailed(make_sequence(4), story_exemplars(), templates(), gw);
  REQUIRE(run.candidates.size() == 3);
  CHECK(run.chosen == 0);
  CHECK(run.logliks[0] == run.logliks[1]);
}

TEST_CASE("a single summary is requested at temperature zero") {
  auto gw = make_mock_gateway();
  FoveationOptions opts;
  opts.n_summaries = 1;
  const auto run = multipoint_foveation_detailed(make_sequence(2), story_exemplars(), templates(), gw, opts);
  REQUIRE(run.candidates.size() == 1);
  CHECK(run.foveation.summary == mock_generated_text(run.summary_prompt, 0.0, 0));
  CHECK(run.foveation.summary_loglik == doctest::Approx(-0.1));
  CHECK(run.foveation.focus == mock_generated_text(run.focus_prompt, 0.0, 0));
  opts.n_summaries = 0;
  CHECK_THROWS_AS(multipoint_foveation(make_sequence(2), story_exemplars(), templates(), gw, opts), PreconditionError);
}

TEST_CASE("summary prompt carries exemplars and every step") {
  auto gw = make_mock_gateway();
  const auto seq = make_sequence(5);
  const auto run = multipoint_foveation_detailed(seq, story_exemplars(), templates(), gw);
  CHECK(run.summary_prompt.find(story_exemplars().foveation) != std::string::npos);
  for (std::size_t i = 0; i < 5; ++i) CHECK(run.summary_prompt.find(seq.elements[i].text()) != std::string::npos);
}

TEST_CASE("empty focus retries once at 0.5 then fails") {
  SUBCASE("recovers") {
    MockOptions mo;
    mo.text_fn = [](std::string_view prompt, double temp, int k) -> std::string {
      if (prompt.rfind("Summary:", 0) == 0) return temp == 0.0 ? "   " : "the family, the beach";
      return mock_generated_text(prompt, temp, k);
    };
    auto gw = make_mock_gateway(nullptr, mo);
    const auto run = multipoint_foveation_detailed(make_sequence(2), story_exemplars(), templates(), gw);
    CHECK(run.focus_retried);
    CHECK(run.foveation.focus == "the family, the beach");
  }
  SUBCASE("gives up") {
    MockOptions mo;
    mo.text_fn = [](std::string_view prompt, double temp, int k) -> std::string {
      if (prompt.rfind("Summary:", 0) == 0) return "";
      return mock_generated_text(prompt, temp, k);
    };
    auto gw = make_mock_gateway(nullptr, mo);
    CHECK_THROWS_AS(multipoint_foveation(make_sequence(2), story_exemplars(), templates(), gw), DegenerateFoveation);
  }
}

TEST_CASE("foveation is a pure function under the mock") {
  auto a = make_mock_gateway();
  auto b = make_mock_gateway();
  const auto seq = make_sequence(5);
  CHECK(multipoint_foveation(seq, story_exemplars(), templates(), a) ==
        multipoint_foveation(seq, story_exemplars(), templates(), b));
}
