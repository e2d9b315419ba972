// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "vcot/errors.hpp"
#include "vcot/evaluation.hpp"
#include "vcot/foveation.hpp"
#include "vcot/mock_backend.hpp"
#include "vcot/pipeline.hpp"

namespace py = pybind11;

namespace {

py::dict run(const std::filesystem::path& dataset, const std::string& format, const std::filesystem::path& out,
             int depth, std::int64_t seed, const std::vector<std::string>& baselines, bool no_infill,
             const std::string& backend) {
  vcot::RunConfig c;
  c.dataset = dataset;
  c.format = vcot::dataset_format_from_string(format);
  c.out = out;
  c.depth = depth;
  c.seed = seed;
  c.no_infill = no_infill;
  c.backend = backend;
  for (const auto& b : baselines) c.baselines.push_back(vcot::baseline_kind_from_string(b));
  vcot::RunSummary s;
  {
    py::gil_scoped_release release;
    s = vcot::run_pipeline(c);
  }
  py::dict d;
  d["run_dir"] = s.run_dir;
  d["sequences"] = s.sequences;
  d["failed"] = s.failed;
  d["backend_calls"] = s.backend_calls;
  d["warnings"] = s.warnings;
  d["exit_code"] = s.exit_code();
  return d;
}

py::dict verify(const std::filesystem::path& run_dir) {
  const auto r = vcot::verify_run(run_dir);
  py::dict d;
  d["ok"] = r.ok();
  d["assets_checked"] = r.assets_checked;
  d["nodes_checked"] = r.nodes_checked;
  d["outputs_checked"] = r.outputs_checked;
  d["problems"] = r.problems;
  return d;
}

std::pair<std::string, std::string> tabulate_csv(const std::string& csv) {
  std::istringstream in(csv);
  const auto recs = vcot::parse_annotations_csv(in);
  auto rep = vcot::tabulate_all(recs);
  return {rep.summary.dump(), rep.markdown};
}

std::vector<double> mock_embed_text(const std::string& text) {
  auto gw = vcot::make_mock_gateway();
  const std::vector<vcot::EmbedItem> items{vcot::EmbedItem::text(text)};
  return gw.embed(items).front().vector;
}

}  // namespace

PYBIND11_MODULE(_vcot, m) {
  m.doc() = "Visual infilling pipeline core";

  py::register_exception<vcot::Error>(m, "VcotError", PyExc_RuntimeError);

  m.def("sha256_hex", [](const std::string& s) { return vcot::sha256_hex(std::string_view(s)); }, py::arg("data"));
  m.def("expected_merged_length", &vcot::expected_merged_length, py::arg("n"), py::arg("depth_limit"));
  m.def("joint_log_likelihood", [](const std::vector<double>& v) { return vcot::joint_log_likelihood(v); },
        py::arg("logprobs"));
  m.def("cosine", [](const std::vector<double>& a, const std::vector<double>& b) { return vcot::cosine(a, b); },
        py::arg("a"), py::arg("b"));
  m.def("percent_hundredths", &vcot::percent_hundredths, py::arg("count"), py::arg("total"));
  m.def("sums_to_100", &vcot::sums_to_100, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("tolerance") = 0.02);
  m.def("mock_generated_text",
        [](const std::string& p, double t, int i) { return vcot::mock_generated_text(p, t, i); }, py::arg("prompt"),
        py::arg("temperature"), py::arg("index"));
  m.def("mock_embed_text", &mock_embed_text, py::arg("text"));
  m.def("tabulate_csv", &tabulate_csv, py::arg("csv_text"));
  m.def("run", &run, py::arg("dataset"), py::arg("format") = "vist", py::arg("out") = "vcot-run",
        py::arg("depth") = 2, py::arg("seed") = 0, py::arg("baselines") = std::vector<std::string>{},
        py::arg("no_infill") = false, py::arg("backend") = "mock");
  m.def("verify", &verify, py::arg("run_dir"));
}
