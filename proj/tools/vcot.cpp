// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <fstream>
#include <iostream>

#include "vcot/config.hpp"
#include "vcot/errors.hpp"
#include "vcot/evaluation.hpp"
#include "vcot/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

struct RunFlags {
  std::string config;
  std::optional<std::string> dataset, format, backend, baselines, out;
  std::optional<int> depth, text_candidates, image_candidates, workers;
  std::optional<std::int64_t> seed;
  bool no_infill = false;
  bool parallel_gaps = false;
};

int cmd_run(const RunFlags& f) {
  vcot::RunConfig c = f.config.empty() ? vcot::RunConfig{} : vcot::load_config(f.config);
  if (f.dataset) c.dataset = *f.dataset;
  if (f.format) c.format = vcot::dataset_format_from_string(*f.format);
  if (f.depth) c.depth = *f.depth;
  if (f.text_candidates) c.text_candidates = *f.text_candidates;
  if (f.image_candidates) c.image_candidates = *f.image_candidates;
  if (f.backend) c.backend = *f.backend;
  if (f.baselines) c.baselines = vcot::parse_baseline_list(*f.baselines);
  if (f.seed) c.seed = *f.seed;
  if (f.out) c.out = *f.out;
  if (f.workers) c.workers = *f.workers;
  if (f.no_infill) c.no_infill = true;
  if (f.parallel_gaps) c.parallel_gaps = true;
  if (c.dataset.empty()) throw vcot::InputError("no dataset given (--dataset or [run].dataset)");

  const auto summary = vcot::run_pipeline(c);
  std::cout << "run: " << summary.run_dir.string() << "\n"
            << "sequences: " << summary.sequences << " (failed: " << summary.failed << ")\n"
            << "backend calls: " << summary.backend_calls << "\n";
  return summary.exit_code();
}

int cmd_tabulate(const std::string& annotations, const std::string& out) {
  std::ifstream in(annotations, std::ios::binary);
  if (!in) throw vcot::InputError("cannot open " + annotations);
  const auto records = vcot::parse_annotations_csv(in);
  const auto report = vcot::tabulate_all(records);
  fs::create_directories(out);
  std::ofstream(fs::path(out) / "tabulation.md", std::ios::binary) << report.markdown;
  std::ofstream(fs::path(out) / "tabulation.json", std::ios::binary) << report.summary.dump(2) << "\n";
  std::cout << report.markdown;
  return 0;
}

int cmd_verify(const std::string& run_dir) {
  const auto rep = vcot::verify_run(run_dir);
  std::cout << "assets: " << rep.assets_checked << "  nodes: " << rep.nodes_checked
            << "  outputs: " << rep.outputs_checked << "\n";
  for (const auto& p : rep.problems) std::cout << "problem: " << p << "\n";
  std::cout << (rep.ok() ? "OK" : "FAILED") << "\n";
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vcot: recursive multimodal infilling for sequential text-visual data"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  RunFlags rf;
  auto* run = app.add_subcommand("run", "Augment a dataset and write a run directory");
  run->add_option("--config", rf.config, "TOML config file")->check(CLI::ExistingFile);
  run->add_option("--dataset", rf.dataset, "Dataset JSON file");
  run->add_option("--format", rf.format, "vist|wikihow|generic")->check(CLI::IsMember({"vist", "wikihow", "generic"}));
  run->add_option("--depth", rf.depth, "Recursion depth limit")->check(CLI::PositiveNumber);
  run->add_option("--text-candidates", rf.text_candidates, "Text candidates per infilling")->check(CLI::PositiveNumber);
  run->add_option("--image-candidates", rf.image_candidates, "Visual candidates per infilling")
      ->check(CLI::PositiveNumber);
  run->add_option("--backend", rf.backend, "mock or a profile name from the config");
  run->add_option("--baselines", rf.baselines, "Comma list of cot,coi,cot_plus_coi,random,no_infilling");
  run->add_option("--seed", rf.seed, "Base seed");
  run->add_option("--out", rf.out, "Run directory");
  run->add_option("--workers", rf.workers, "Concurrent sequences")->check(CLI::PositiveNumber);
  run->add_flag("--no-infill", rf.no_infill, "Skip foveation and infilling");
  run->add_flag("--parallel-gaps", rf.parallel_gaps, "Infill gaps concurrently");

  std::string annotations, tab_out;
  auto* tab = app.add_subcommand("tabulate", "Tabulate a human-annotation CSV");
  tab->add_option("--annotations", annotations, "Annotation CSV")->required()->check(CLI::ExistingFile);
  tab->add_option("--out", tab_out, "Output directory")->required();

  std::string run_dir;
  auto* ver = app.add_subcommand("verify", "Re-check hashes and selections in a run directory");
  ver->add_option("--run", run_dir, "Run directory")->required()->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::warn);

  try {
    if (*run) return cmd_run(rf);
    if (*tab) return cmd_tabulate(annotations, tab_out);
    if (*ver) return cmd_verify(run_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
