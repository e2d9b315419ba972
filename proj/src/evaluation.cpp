// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include "vcot/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>
#include <set>

#include "vcot/errors.hpp"
#include "vcot/recursion.hpp"
#include "vcot/text_util.hpp"

namespace vcot {

using nlohmann::json;

namespace {

constexpr std::array kMetrics{Metric::image_consistency, Metric::text_consistency, Metric::image_novelty,
                              Metric::text_novelty,      Metric::novelty,          Metric::consistency,
                              Metric::descriptiveness,   Metric::coherence};
constexpr std::array kMethods{Method::vcot,   Method::cot_plus_coi, Method::cot,      Method::coi,
                              Method::random, Method::no_infilling, Method::reference};

template <typename E, std::size_t N>
E enum_from_string(std::string_view s, const std::array<E, N>& all, const char* what) {
  for (E e : all)
    if (to_string(e) == s) return e;
  throw InputError(std::string("unknown ") + what + ": '" + std::string(s) + "'");
}

}  // namespace

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::image_consistency: return "image_consistency";
    case Metric::text_consistency: return "text_consistency";
    case Metric::image_novelty: return "image_novelty";
    case Metric::text_novelty: return "text_novelty";
    case Metric::novelty: return "novelty";
    case Metric::consistency: return "consistency";
    case Metric::descriptiveness: return "descriptiveness";
    case Metric::coherence: return "coherence";
  }
  return "";
}

std::string_view to_string(AnnotationMode m) { return m == AnnotationMode::pairwise ? "pairwise" : "scale"; }

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::win: return "win";
    case Outcome::tie: return "tie";
    case Outcome::loss: return "loss";
  }
  return "";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::vcot: return "vcot";
    case Method::cot_plus_coi: return "cot_plus_coi";
    case Method::cot: return "cot";
    case Method::coi: return "coi";
    case Method::random: return "random";
    case Method::no_infilling: return "no_infilling";
    case Method::reference: return "reference";
  }
  return "";
}

Metric metric_from_string(std::string_view s) { return enum_from_string(s, kMetrics, "metric"); }
Method method_from_string(std::string_view s) { return enum_from_string(s, kMethods, "method"); }

void AnnotationRecord::validate() const {
  if (mode == AnnotationMode::pairwise) {
    if (!pairwise_outcome || scale_score) throw InputError("pairwise record " + item_id + " needs exactly an outcome");
    if (baseline == Method::vcot) throw InputError("pairwise record " + item_id + " compares vcot with itself");
  } else {
    if (!scale_score || pairwise_outcome) throw InputError("scale record " + item_id + " needs exactly a score");
    if (*scale_score < 1 || *scale_score > 5)
      throw InputError("scale record " + item_id + ": score " + std::to_string(*scale_score) + " outside 1..5");
  }
}

// ------------------------------------------------------------------- CSV

namespace {

/// Splits one RFC 4180 record; handles quoted fields with embedded commas,
/// doubled quotes and newlines.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool in_quotes = false, any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (in_quotes) throw InputError("annotations CSV: unterminated quoted field");
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

}  // namespace

std::vector<AnnotationRecord> parse_annotations_csv(std::istream& in) {
  std::vector<std::string> header;
  if (!read_csv_record(in, header)) throw InputError("annotations CSV: missing header");
  for (auto& h : header) h = trim(h);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char* required :
       {"item_id", "metric", "mode", "pairwise_outcome", "scale_score", "baseline", "annotator_id"})
    if (!col.count(required)) throw InputError(std::string("annotations CSV: missing column ") + required);

  std::vector<AnnotationRecord> out;
  std::vector<std::string> row;
  std::size_t line = 1;
  while (read_csv_record(in, row)) {
    ++line;
    if (row.size() == 1 && trim(row[0]).empty()) continue;
    if (row.size() != header.size())
      throw InputError("annotations CSV line " + std::to_string(line) + ": expected " +
                       std::to_string(header.size()) + " fields");
    auto get = [&](const char* name) -> std::string {
      auto it = col.find(name);
      return it == col.end() ? std::string() : trim(row[it->second]);
    };
    try {
      AnnotationRecord r;
      r.item_id = get("item_id");
      r.metric = metric_from_string(get("metric"));
      const auto mode = get("mode");
      if (mode == "pairwise")
        r.mode = AnnotationMode::pairwise;
      else if (mode == "scale")
        r.mode = AnnotationMode::scale;
      else
        throw InputError("unknown mode '" + mode + "'");
      if (auto o = get("pairwise_outcome"); !o.empty()) {
        if (o == "win")
          r.pairwise_outcome = Outcome::win;
        else if (o == "tie")
          r.pairwise_outcome = Outcome::tie;
        else if (o == "loss")
          r.pairwise_outcome = Outcome::loss;
        else
          throw InputError("unknown outcome '" + o + "'");
      }
      if (auto s = get("scale_score"); !s.empty()) {
        std::size_t used = 0;
        int v = 0;
        try {
          v = std::stoi(s, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != s.size()) throw InputError("bad scale_score '" + s + "'");
        r.scale_score = v;
      }
      if (auto b = get("baseline"); !b.empty()) r.baseline = method_from_string(b);
      if (auto m = get("method"); !m.empty()) r.method = method_from_string(m);
      r.annotator_id = get("annotator_id");
      if (auto a = get("attention_check"); !a.empty()) {
        if (a != "pass" && a != "fail") throw InputError("attention_check must be pass or fail");
        r.attention_passed = a == "pass";
      }
      if (r.mode == AnnotationMode::pairwise && get("baseline").empty()) throw InputError("pairwise row without baseline");
      r.validate();
      out.push_back(std::move(r));
    } catch (const InputError& e) {
      throw InputError("annotations CSV line " + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

// ------------------------------------------------------------ tabulation

std::int64_t percent_hundredths(std::size_t count, std::size_t total) {
  if (total == 0) throw EmptySliceError("percentage of an empty slice");
  const auto c = static_cast<std::int64_t>(count), t = static_cast<std::int64_t>(total);
  return (c * 20000 + t) / (2 * t);
}

std::string PercentTriple::formatted(std::size_t i) const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%02lld", static_cast<long long>(hundredths[i] / 100),
                static_cast<long long>(hundredths[i] % 100));
  return buf;
}

namespace {

PercentTriple make_triple(std::array<std::size_t, 3> counts) {
  PercentTriple t;
  t.counts = counts;
  t.total = counts[0] + counts[1] + counts[2];
  for (std::size_t i = 0; i < 3; ++i) t.hundredths[i] = percent_hundredths(counts[i], t.total);
  return t;
}

}  // namespace

PercentTriple tabulate_win_tie_loss(std::span<const AnnotationRecord> records, Metric metric, Method baseline) {
  std::array<std::size_t, 3> counts{};
  for (const auto& r : records) {
    if (r.mode != AnnotationMode::pairwise || r.metric != metric || r.baseline != baseline || !r.attention_passed)
      continue;
    r.validate();
    counts[static_cast<std::size_t>(*r.pairwise_outcome)]++;
  }
  if (counts[0] + counts[1] + counts[2] == 0)
    throw EmptySliceError("no pairwise records for " + std::string(to_string(metric)) + " vs " +
                          std::string(to_string(baseline)));
  return make_triple(counts);
}

PercentTriple tabulate_scale(std::span<const AnnotationRecord> records, Metric metric, Method method) {
  std::array<std::size_t, 3> counts{};  // good, neutral, poor
  for (const auto& r : records) {
    if (r.mode != AnnotationMode::scale || r.metric != metric || r.method != method || !r.attention_passed) continue;
    r.validate();
    const int s = *r.scale_score;
    counts[s >= 4 ? 0 : (s == 3 ? 1 : 2)]++;
  }
  if (counts[0] + counts[1] + counts[2] == 0)
    throw EmptySliceError("no scale records for " + std::string(to_string(metric)) + " of " +
                          std::string(to_string(method)));
  return make_triple(counts);
}

bool sums_to_100(double a, double b, double c, double tolerance) {
  return std::abs(a + b + c - 100.0) <= tolerance + 1e-9;
}

TabulationReport tabulate_all(std::span<const AnnotationRecord> records) {
  std::set<std::pair<Method, Metric>> pairwise, scale;
  for (const auto& r : records) {
    if (!r.attention_passed) continue;
    (r.mode == AnnotationMode::pairwise ? pairwise : scale).insert({r.mode == AnnotationMode::pairwise ? r.baseline : r.method, r.metric});
  }

  TabulationReport report;
  report.summary = json{{"win_tie_loss", json::object()}, {"scale", json::object()}};
  std::string md = "# Annotation tabulation\n";

  auto section = [&](const std::set<std::pair<Method, Metric>>& keys, const char* json_key, const char* title,
                     std::array<const char*, 3> labels, auto&& tabulate) {
    if (keys.empty()) return;
    md += std::string("\n## ") + title + "\n\n| " + (std::string(json_key) == "scale" ? "Method" : "VCoT vs.") +
          " | Metric | " + labels[0] + " | " + labels[1] + " | " + labels[2] + " | n |\n|---|---|---:|---:|---:|---:|\n";
    for (const auto& [method, metric] : keys) {
      const PercentTriple t = tabulate(metric, method);
      json cell{{labels[0], t.value(0)}, {labels[1], t.value(1)}, {labels[2], t.value(2)}, {"n", t.total}};
      report.summary[json_key][std::string(to_string(method))][std::string(to_string(metric))] = cell;
      md += "| " + std::string(to_string(method)) + " | " + std::string(to_string(metric)) + " | " + t.formatted(0) +
            " | " + t.formatted(1) + " | " + t.formatted(2) + " | " + std::to_string(t.total) + " |\n";
    }
  };
  section(pairwise, "win_tie_loss", "Win-tie-loss (%)", {"win", "tie", "loss"},
          [&](Metric m, Method b) { return tabulate_win_tie_loss(records, m, b); });
  section(scale, "scale", "5-point scale (%)", {"good", "neutral", "poor"},
          [&](Metric m, Method b) { return tabulate_scale(records, m, b); });
  report.markdown = std::move(md);
  return report;
}

// ------------------------------------------------------------- baselines

std::string_view to_string(BaselineKind k) {
  switch (k) {
    case BaselineKind::cot: return "cot";
    case BaselineKind::coi: return "coi";
    case BaselineKind::cot_plus_coi: return "cot_plus_coi";
    case BaselineKind::random: return "random";
    case BaselineKind::no_infilling: return "no_infilling";
  }
  return "";
}

BaselineKind baseline_kind_from_string(std::string_view s) {
  constexpr std::array all{BaselineKind::cot, BaselineKind::coi, BaselineKind::cot_plus_coi, BaselineKind::random,
                           BaselineKind::no_infilling};
  return enum_from_string(s, all, "baseline");
}

namespace {

/// Endpoint of a baseline recursion; either modality may be missing.
struct Slot {
  std::optional<std::string> text;
  std::optional<VisualAsset> visual;
  std::optional<std::string> caption;

  static Slot of(const TextVisualPair& p) { return {p.text(), p.visual(), p.caption()}; }
  static Slot of(const InfillingNode& n) { return {n.text, n.visual, n.caption}; }
};

std::vector<std::vector<InfillingNode>> per_gap(const Sequence& seq, const RecursionPolicy& policy, bool parallel,
                                                const std::function<InfillingNode(const Slot&, const Slot&, int,
                                                                                  std::size_t)>& generate) {
  return map_indexed(seq.gap_count(), parallel, [&](std::size_t gap) {
    try {
      auto gen = [&](const Slot& a, const Slot& b, int d) { return generate(a, b, d, gap); };
      auto endpoint_of = [](const InfillingNode& n) { return Slot::of(n); };
      return bisect_gap<Slot, InfillingNode>(Slot::of(seq.elements[gap]), Slot::of(seq.elements[gap + 1]), 1,
                                             policy.depth_limit, gen, endpoint_of, parallel);
    } catch (const GapError&) {
      throw;
    } catch (const std::exception& e) {
      throw GapError(gap, e.what());
    }
  });
}

InfillingNode cot_node(const Slot& prev, const Slot& next, int depth, std::size_t gap, BaselineContext& ctx) {
  if (!prev.text || !next.text) throw PreconditionError("cot baseline: neighbor without text");
  const std::string prompt = render(ctx.templates.cot_infill, {{"prev_text", *prev.text}, {"next_text", *next.text}});
  auto text = trim(ctx.gateway.generate_text(prompt, 0.0, 1, false, ctx.options.max_tokens, ctx.seed).front().text);
  if (text.empty()) throw GenerationError("cot baseline: empty generation");
  InfillingNode node;
  node.text = std::move(text);
  node.depth = depth;
  node.gap_index = gap;
  node.method = InfillMethod::cot;
  node.trace.prompt_sha256 = sha256_hex(prompt);
  return node;
}

InfillingNode coi_node(const Slot& prev, const Slot& next, int depth, std::size_t gap, BaselineContext& ctx) {
  if (!prev.visual || !next.visual) throw PreconditionError("coi baseline: neighbor without visual");
  auto caption = [&](const Slot& s) { return s.caption ? *s.caption : ctx.gateway.caption_image(*s.visual); };
  const std::string prompt = caption(prev) + " " + caption(next);
  InfillingNode node;
  node.visual = ctx.gateway.generate_image(prompt, 1, ctx.seed).front();
  node.depth = depth;
  node.gap_index = gap;
  node.method = InfillMethod::coi;
  node.trace.image_prompt_sha256 = sha256_hex(prompt);
  return node;
}

}  // namespace

AugmentedSequence run_baseline(const Sequence& seq, const Foveation& /*unused: baselines are unguided*/,
                               const RecursionPolicy& policy, BaselineKind kind, BaselineContext& ctx) {
  if (seq.elements.empty()) throw PreconditionError("run_baseline: empty sequence");
  policy.validate();
  const bool parallel = ctx.options.parallel;
  switch (kind) {
    case BaselineKind::no_infilling:
      return merge_gap_results(seq, std::vector<std::vector<InfillingNode>>(seq.gap_count()));
    case BaselineKind::cot:
      return merge_gap_results(seq, per_gap(seq, policy, parallel, [&](const Slot& a, const Slot& b, int d,
                                                                       std::size_t g) { return cot_node(a, b, d, g, ctx); }));
    case BaselineKind::coi:
      return merge_gap_results(seq, per_gap(seq, policy, parallel, [&](const Slot& a, const Slot& b, int d,
                                                                       std::size_t g) { return coi_node(a, b, d, g, ctx); }));
    case BaselineKind::cot_plus_coi: {
      auto texts = run_baseline(seq, {}, policy, BaselineKind::cot, ctx);
      auto visuals = run_baseline(seq, {}, policy, BaselineKind::coi, ctx);
      for (std::size_t i = 0; i < texts.infillings.size(); ++i) {
        auto& n = texts.infillings[i];
        const auto& v = visuals.infillings.at(i);
        n.visual = v.visual;
        n.method = InfillMethod::cot_plus_coi;
        n.trace.image_prompt_sha256 = v.trace.image_prompt_sha256;
      }
      return texts;
    }
    case BaselineKind::random: {
      if (ctx.pool.empty()) throw InputError("random baseline: empty pool");
      std::mt19937_64 rng(static_cast<std::uint64_t>(ctx.seed));
      // Draws happen in merged order so the result does not depend on scheduling.
      auto aug = merge_gap_results(seq, per_gap(seq, policy, false, [&](const Slot&, const Slot&, int d, std::size_t g) {
        InfillingNode n;
        n.depth = d;
        n.gap_index = g;
        return n;
      }));
      for (const auto& entry : aug.merged) {
        if (entry.tag != Provenance::infilled) continue;
        auto& slot = aug.infillings[entry.index];
        InfillingNode drawn = ctx.pool[rng() % ctx.pool.size()];
        drawn.depth = slot.depth;
        drawn.gap_index = slot.gap_index;
        drawn.method = InfillMethod::random;
        slot = std::move(drawn);
      }
      return aug;
    }
  }
  throw PreconditionError("run_baseline: unknown kind");
}

}  // namespace vcot
