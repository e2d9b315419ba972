// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>

#include "vcot/pipeline.hpp"

namespace vcot {

using nlohmann::json;

namespace {

json score_or_null(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

json scores_json(const std::vector<double>& scores) {
  json arr = json::array();
  for (double s : scores) arr.push_back(score_or_null(s));
  return arr;
}

void append_downstream(std::vector<json>& out, const std::string& id, std::string_view method, TaskKind task,
                       const DownstreamResult& d) {
  out.push_back({{"sequence_id", id},
                 {"method", method},
                 {"kind", "summary"},
                 {"text", d.summary},
                 {"prompt_sha256", sha256_hex(d.summary_prompt)}});
  const char* kind = task == TaskKind::storytelling ? "story_step" : "instruction";
  for (const auto& s : d.steps)
    out.push_back({{"sequence_id", id},
                   {"method", method},
                   {"kind", kind},
                   {"step_index", s.step_index},
                   {"text", s.text},
                   {"prompt", s.prompt},
                   {"prompt_sha256", s.prompt_sha256}});
}

std::string fixed4(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string md_cell(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|')
      out += "\\|";
    else if (c == '\n' || c == '\r')
      out += ' ';
    else
      out += c;
  }
  return out;
}

std::string html_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// One gallery row, shared by both renderers.
struct GalleryRow {
  std::size_t position;
  bool original;
  std::string depth, gap, text, visual_id, text_score, visual_score;
};

std::vector<GalleryRow> gallery(const AugmentedSequence& aug) {
  std::vector<GalleryRow> rows;
  for (std::size_t m = 0; m < aug.merged.size(); ++m) {
    const auto& e = aug.merged[m];
    if (e.tag == Provenance::original) {
      const auto& p = aug.original.elements[e.index];
      rows.push_back({m, true, "", "", p.text(), p.visual().id(), "", ""});
    } else {
      const auto& n = aug.infillings[e.index];
      rows.push_back({m, false, std::to_string(n.depth), std::to_string(n.gap_index), n.text.value_or(""),
                      n.visual ? n.visual->id() : "", fixed4(n.text_score), fixed4(n.visual_score)});
    }
  }
  return rows;
}

const char* downstream_title(TaskKind t) { return t == TaskKind::storytelling ? "Story" : "Instructions"; }

}  // namespace

json node_record(const std::string& sequence_id, std::string_view method, std::size_t position,
                 const InfillingNode& n) {
  return json{{"sequence_id", sequence_id},
              {"method", method},
              {"position", position},
              {"gap_index", n.gap_index},
              {"depth", n.depth},
              {"text", n.text ? json(*n.text) : json(nullptr)},
              {"visual_id", n.visual ? json(n.visual->id()) : json(nullptr)},
              {"text_score", score_or_null(n.text_score)},
              {"visual_score", score_or_null(n.visual_score)},
              {"candidate_index_text", n.candidate_index_text},
              {"candidate_index_visual", n.candidate_index_visual},
              {"text_candidate_scores", scores_json(n.trace.text_candidate_scores)},
              {"visual_candidate_scores", scores_json(n.trace.visual_candidate_scores)},
              {"novelty_proxy", n.trace.novelty ? json(*n.trace.novelty) : json(nullptr)},
              {"prompt_sha256", n.trace.prompt_sha256},
              {"image_prompt_sha256", n.trace.image_prompt_sha256}};
}

std::vector<json> node_records(const std::vector<SequenceRun>& runs) {
  std::vector<json> out;
  auto emit = [&](const std::string& id, std::string_view method, const AugmentedSequence& aug) {
    for (std::size_t m = 0; m < aug.merged.size(); ++m)
      if (aug.merged[m].tag == Provenance::infilled)
        out.push_back(node_record(id, method, m, aug.infillings[aug.merged[m].index]));
  };
  for (const auto& r : runs) {
    if (r.error) continue;
    if (r.augmented) emit(r.sequence_id, "vcot", *r.augmented);
    for (const auto& b : r.baselines) emit(r.sequence_id, to_string(b.kind), b.augmented);
  }
  return out;
}

std::vector<json> output_records(const std::vector<SequenceRun>& runs) {
  std::vector<json> out;
  for (const auto& r : runs) {
    if (r.error) {
      out.push_back({{"sequence_id", r.sequence_id}, {"kind", "error"}, {"error", *r.error}});
      continue;
    }
    if (r.foveation) {
      const auto& f = *r.foveation;
      out.push_back({{"sequence_id", r.sequence_id},
                     {"method", "vcot"},
                     {"kind", "foveation"},
                     {"focus", f.foveation.focus},
                     {"summary", f.foveation.summary},
                     {"summary_loglik", f.foveation.summary_loglik},
                     {"candidates", f.candidates},
                     {"candidate_logliks", f.logliks},
                     {"chosen", f.chosen},
                     {"summary_prompt_sha256", sha256_hex(f.summary_prompt)},
                     {"focus_prompt_sha256", sha256_hex(f.focus_prompt)}});
    }
    if (r.downstream) append_downstream(out, r.sequence_id, "vcot", r.task, *r.downstream);
    for (const auto& b : r.baselines)
      if (b.downstream) append_downstream(out, r.sequence_id, to_string(b.kind), r.task, *b.downstream);
  }
  return out;
}

std::string render_report_markdown(const std::vector<SequenceRun>& runs) {
  std::size_t failed = 0;
  for (const auto& r : runs)
    if (r.error) ++failed;
  std::string md = "# VCoT run report\n\nSequences: " + std::to_string(runs.size()) +
                   " (failed: " + std::to_string(failed) + ")\n";
  for (const auto& r : runs) {
    md += "\n## " + md_cell(r.sequence_id) + " (" + std::string(to_string(r.task)) + ")\n\n";
    if (r.error) {
      md += "Failed: " + md_cell(*r.error) + "\n";
      continue;
    }
    if (r.sequence && r.sequence->title) md += "Title: " + md_cell(*r.sequence->title) + "\n\n";
    if (r.foveation) {
      md += "Focus: " + md_cell(r.foveation->foveation.focus) + "\n\n";
      md += "Summary: " + md_cell(r.foveation->foveation.summary) + "\n\n";
    }
    md += "| # | Tag | Depth | Gap | Text | Visual | Text score | Visual score |\n";
    md += "|---|---|---|---|---|---|---|---|\n";
    for (const auto& row : gallery(*r.augmented)) {
      md += "| " + std::to_string(row.position) + " | " + (row.original ? "original" : "infilled") + " | " +
            row.depth + " | " + row.gap + " | " + md_cell(row.text) + " | " +
            (row.visual_id.empty() ? "" : "![" + row.visual_id.substr(0, 8) + "](assets/" + row.visual_id + ".png)") +
            " | " + row.text_score + " | " + row.visual_score + " |\n";
    }
    if (r.downstream) {
      md += "\n### " + std::string(downstream_title(r.task)) + "\n\n";
      for (const auto& s : r.downstream->steps) md += std::to_string(s.step_index + 1) + ". " + md_cell(s.text) + "\n";
    }
    if (!r.baselines.empty()) {
      md += "\n### Baselines\n\n";
      for (const auto& b : r.baselines)
        md += "- " + std::string(to_string(b.kind)) + ": " + std::to_string(b.augmented.infillings.size()) +
              " infillings\n";
    }
  }
  return md;
}

std::string render_report_html(const std::vector<SequenceRun>& runs) {
  std::string h =
      "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>VCoT run report</title>\n"
      "<style>body{font-family:sans-serif;margin:2em}.gallery{display:flex;flex-wrap:wrap;gap:12px}"
      "figure{width:180px;margin:0;padding:6px;border:2px solid #ccc}figure.infilled{border-color:#e0a000}"
      "figure img{width:100%;image-rendering:pixelated}figcaption{font-size:12px}</style>\n</head><body>\n"
      "<h1>VCoT run report</h1>\n";
  for (const auto& r : runs) {
    h += "<section>\n<h2>" + html_escape(r.sequence_id) + " (" + std::string(to_string(r.task)) + ")</h2>\n";
    if (r.error) {
      h += "<p>Failed: " + html_escape(*r.error) + "</p>\n</section>\n";
      continue;
    }
    if (r.foveation) h += "<p><b>Focus:</b> " + html_escape(r.foveation->foveation.focus) + "</p>\n";
    h += "<div class=\"gallery\">\n";
    for (const auto& row : gallery(*r.augmented)) {
      h += std::string("<figure class=\"") + (row.original ? "original" : "infilled") + "\">";
      if (!row.visual_id.empty()) h += "<img src=\"assets/" + row.visual_id + ".png\" alt=\"\">";
      h += "<figcaption>#" + std::to_string(row.position) + " " + (row.original ? "original" : "infilled");
      if (!row.original)
        h += " d=" + row.depth + " gap=" + row.gap + " ts=" + row.text_score + " vs=" + row.visual_score;
      h += "<br>" + html_escape(row.text) + "</figcaption></figure>\n";
    }
    h += "</div>\n";
    if (r.downstream) {
      h += "<h3>" + std::string(downstream_title(r.task)) + "</h3>\n<ol>\n";
      for (const auto& s : r.downstream->steps) h += "<li>" + html_escape(s.text) + "</li>\n";
      h += "</ol>\n";
    }
    h += "</section>\n";
  }
  h += "</body></html>\n";
  return h;
}

}  // namespace vcot
