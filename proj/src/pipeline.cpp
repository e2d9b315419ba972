// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include "vcot/pipeline.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>
#include <thread>

#include "vcot/errors.hpp"
#include "vcot/infilling.hpp"
#include "vcot/unification.hpp"

namespace vcot {

namespace fs = std::filesystem;
using nlohmann::json;

PipelineResources PipelineResources::load(Gateway& gateway, const RunConfig& config) {
  PipelineResources r{gateway, config.templates_dir ? PromptTemplates::load(*config.templates_dir)
                                                    : PromptTemplates::builtin(),
                      {}};
  for (auto task : {TaskKind::storytelling, TaskKind::summarization, TaskKind::generic})
    r.exemplars.emplace(task, config.exemplars_dir ? ExemplarSet::load(*config.exemplars_dir, task)
                                                   : ExemplarSet::builtin(task));
  return r;
}

namespace {

InfillOptions infill_options(const RunConfig& c) {
  InfillOptions o;
  o.n_text = c.text_candidates;
  o.n_visual = c.image_candidates;
  o.text_target = c.text_target;
  o.max_tokens = c.max_tokens_infill;
  o.seed = c.seed;
  o.parallel = c.parallel_gaps;
  return o;
}

std::optional<DownstreamResult> run_downstream(const AugmentedSequence& aug, const Foveation& fov,
                                               const RunConfig& config, PipelineResources& res) {
  DownstreamOptions opts;
  opts.max_tokens = config.max_tokens_summary;
  opts.seed = config.seed;
  opts.parallel = config.parallel_gaps;
  const auto& ex = res.exemplars_for(aug.original.task);
  switch (aug.original.task) {
    case TaskKind::storytelling: return build_story(aug, fov, ex, res.templates, res.gateway, opts);
    case TaskKind::summarization: return summarize_instructions(aug, fov, ex, res.templates, res.gateway, opts);
    case TaskKind::generic: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

SequenceRun process_sequence(const SourceSequence& source, const RunConfig& config, PipelineResources& res) {
  SequenceRun run;
  run.sequence_id = source.id;
  run.task = source.task;
  try {
    Sequence seq;
    if (source.has_visuals()) {
      seq = source.to_sequence();
    } else {
      UnifyOptions uo;
      uo.candidates = config.unify_candidates;
      uo.aggregator = config.unify_aggregator;
      uo.seed = config.seed;
      uo.sequence_id = source.id;
      uo.task = source.task;
      uo.title = source.title;
      seq = unify_text_sequence(source.texts, res.gateway, uo);
    }
    if (config.no_infill) {
      run.augmented = merge_gap_results(seq, std::vector<std::vector<InfillingNode>>(seq.gap_count()));
      run.sequence = std::move(seq);
      return run;
    }
    seq = with_captions(seq, res.gateway);
    run.sequence = seq;

    FoveationOptions fo;
    fo.n_summaries = config.summary_candidates;
    fo.max_tokens = config.max_tokens_summary;
    fo.seed = config.seed;
    run.foveation = multipoint_foveation_detailed(seq, res.exemplars_for(seq.task), res.templates, res.gateway, fo);
    const Foveation& fov = run.foveation->foveation;

    RecursionPolicy policy{config.depth};
    InfillContext ctx{res.gateway, fov, res.exemplars_for(seq.task), res.templates, infill_options(config)};
    run.augmented = infill_sequence(seq, policy, ctx);
    run.downstream = run_downstream(*run.augmented, fov, config, res);

    BaselineContext bctx{res.gateway, res.templates, infill_options(config), {}, config.seed};
    for (auto kind : config.baselines) {
      if (kind == BaselineKind::random) continue;
      BaselineRun b{kind, run_baseline(seq, fov, policy, kind, bctx), std::nullopt};
      b.downstream = run_downstream(b.augmented, fov, config, res);
      run.baselines.push_back(std::move(b));
    }
  } catch (const std::exception& e) {
    spdlog::error("sequence {} failed: {}", source.id, e.what());
    run.error = e.what();
  }
  return run;
}

void add_random_baselines(std::vector<SequenceRun>& runs, const RunConfig& config, PipelineResources& res) {
  if (config.no_infill) return;
  if (std::find(config.baselines.begin(), config.baselines.end(), BaselineKind::random) == config.baselines.end())
    return;
  std::vector<InfillingNode> pool;
  for (const auto& r : runs)
    if (!r.error && r.augmented)
      for (const auto& n : r.augmented->infillings) pool.push_back(n);

  for (std::size_t i = 0; i < runs.size(); ++i) {
    auto& r = runs[i];
    if (r.error || !r.sequence || !r.foveation) continue;
    try {
      BaselineContext bctx{res.gateway, res.templates, infill_options(config), pool,
                           config.seed + static_cast<std::int64_t>(i)};
      RecursionPolicy policy{config.depth};
      BaselineRun b{BaselineKind::random,
                    run_baseline(*r.sequence, r.foveation->foveation, policy, BaselineKind::random, bctx),
                    std::nullopt};
      b.downstream = run_downstream(b.augmented, r.foveation->foveation, config, res);
      r.baselines.push_back(std::move(b));
      auto rank = [&](BaselineKind k) {
        return std::find(config.baselines.begin(), config.baselines.end(), k) - config.baselines.begin();
      };
      std::stable_sort(r.baselines.begin(), r.baselines.end(),
                       [&](const BaselineRun& a, const BaselineRun& b2) { return rank(a.kind) < rank(b2.kind); });
    } catch (const std::exception& e) {
      spdlog::error("sequence {} random baseline failed: {}", r.sequence_id, e.what());
      r.error = e.what();
    }
  }
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

void write_jsonl(const fs::path& path, const std::vector<json>& records) {
  std::string content;
  for (const auto& r : records) content += r.dump() + "\n";
  write_file(path, content);
}

void write_asset(const fs::path& dir, const VisualAsset& asset, std::set<std::string>& written) {
  if (!written.insert(asset.id()).second) return;
  const fs::path path = dir / (asset.id() + ".png");
  if (fs::exists(path)) return;
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(asset.png_bytes().data()),
            static_cast<std::streamsize>(asset.png_bytes().size()));
}

void write_assets(const fs::path& dir, const std::vector<SequenceRun>& runs) {
  fs::create_directories(dir);
  std::set<std::string> written;
  auto nodes = [&](const AugmentedSequence& aug) {
    for (const auto& p : aug.original.elements) write_asset(dir, p.visual(), written);
    for (const auto& n : aug.infillings)
      if (n.visual) write_asset(dir, *n.visual, written);
  };
  for (const auto& r : runs) {
    if (r.sequence)
      for (const auto& p : r.sequence->elements) write_asset(dir, p.visual(), written);
    if (r.augmented) nodes(*r.augmented);
    for (const auto& b : r.baselines) nodes(b.augmented);
  }
}

}  // namespace

RunSummary run_pipeline(const RunConfig& config, Gateway& gateway) {
  config.validate();
  RunSummary summary;
  summary.run_dir = config.out;
  fs::create_directories(config.out);

  const IngestResult ingest = parse_dataset(config.dataset, config.format);
  summary.warnings = ingest.warnings;
  PipelineResources res = PipelineResources::load(gateway, config);

  std::vector<SequenceRun> runs(ingest.sequences.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) runs[i] = process_sequence(ingest.sequences[i], config, res);
  };
  const std::size_t n_workers = std::min<std::size_t>(static_cast<std::size_t>(config.workers), runs.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  add_random_baselines(runs, config, res);

  write_file(config.out / "config.toml", config_to_toml(config));
  write_assets(config.out / "assets", runs);
  write_jsonl(config.out / "nodes.jsonl", node_records(runs));
  write_jsonl(config.out / "outputs.jsonl", output_records(runs));
  write_file(config.out / "report.md", render_report_markdown(runs));
  write_file(config.out / "report.html", render_report_html(runs));

  summary.sequences = runs.size();
  for (const auto& r : runs)
    if (r.error) ++summary.failed;
  summary.backend_calls = gateway.backend_calls();
  json stats{{"sequences", summary.sequences},
             {"failed", summary.failed},
             {"backend_calls", summary.backend_calls},
             {"cache_entries", gateway.cache().size()},
             {"warnings", summary.warnings}};
  write_file(config.out / "stats.json", stats.dump(2) + "\n");
  return summary;
}

RunSummary run_pipeline(const RunConfig& config) {
  config.validate();
  auto cache = std::make_shared<ResponseCache>(config.effective_cache_dir());
  Gateway gateway = Gateway::from_profile(config.resolve_profile(), cache);
  return run_pipeline(config, gateway);
}

}  // namespace vcot
