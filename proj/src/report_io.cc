/*
 * Copyright 2026 The woe-explain Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "woe/report_io.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "woe/error.h"
#include "woe/svg.h"

namespace woe {
namespace {

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Drops the closing tag of `svg` so two charts can share one document.
std::string Inner(const std::string& svg) {
  const auto open = svg.find('>');
  const auto close = svg.rfind("</svg>");
  return svg.substr(open + 1, close - open - 1);
}

}  // namespace

std::string estimation_to_csv(const EstimationReport& report) {
  std::ostringstream out;
  out << "d,n_fit,seed,metric,value\n";
  for (const auto& c : report.cells) {
    out << c.dim << ',' << c.n_fit << ',' << c.seed << ",mse," << Fmt(c.mse)
        << '\n';
    out << c.dim << ',' << c.n_fit << ',' << c.seed << ",ndcg," << Fmt(c.ndcg)
        << '\n';
  }
  return out.str();
}

nlohmann::ordered_json estimation_to_json(const EstimationConfig& config,
                                          const EstimationReport& report) {
  nlohmann::ordered_json j;
  j["config"] = {{"dims", config.dims},
                 {"n_fits", config.n_fits},
                 {"n_train", config.n_train},
                 {"n_test", config.n_test},
                 {"seeds", config.seeds},
                 {"n_classes", config.n_classes},
                 {"smoothing", config.smoothing}};
  auto cells = nlohmann::ordered_json::array();
  for (const auto& c : report.cells) {
    cells.push_back({{"d", c.dim},
                     {"n_fit", c.n_fit},
                     {"seed", c.seed},
                     {"mse", c.mse},
                     {"ndcg", c.ndcg},
                     {"n_instances", c.n_instances},
                     {"skipped_instances", c.skipped_instances}});
  }
  j["cells"] = cells;
  auto means = nlohmann::ordered_json::array();
  for (int d : config.dims) {
    for (int n : config.n_fits) {
      means.push_back({{"d", d},
                       {"n_fit", n},
                       {"mse", report.MeanMse(d, n)},
                       {"ndcg", report.MeanNdcg(d, n)}});
    }
  }
  j["means"] = means;
  return j;
}

std::string estimation_to_svg(const EstimationReport& report) {
  std::set<int> dims, fits;
  for (const auto& c : report.cells) {
    dims.insert(c.dim);
    fits.insert(c.n_fit);
  }
  std::vector<LineSeries> mse, ndcg;
  for (int d : dims) {
    LineSeries m{"d = " + std::to_string(d), {}, {}};
    LineSeries n = m;
    for (int f : fits) {
      m.x.push_back(f);
      m.y.push_back(report.MeanMse(d, f));
      n.x.push_back(f);
      n.y.push_back(report.MeanNdcg(d, f));
    }
    mse.push_back(std::move(m));
    ndcg.push_back(std::move(n));
  }
  const std::string left =
      render_line_chart("WoE estimation error", "N_fit", "MSE", mse);
  const std::string right =
      render_line_chart("WoE ranking quality", "N_fit", "signed NDCG", ndcg);
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1120\" "
         "height=\"360\" font-family=\"sans-serif\">\n<g>" +
         Inner(left) + "</g>\n<g transform=\"translate(560,0)\">" +
         Inner(right) + "</g>\n</svg>\n";
}

std::string robustness_to_csv(const RobustnessReport& report) {
  std::ostringstream out;
  out << "dataset,row,seed,metric,value\n";
  for (const auto& r : report.records) {
    const std::string key =
        r.dataset + ',' + std::to_string(r.row) + ',' + std::to_string(r.seed);
    out << key << ",lipschitz," << Fmt(r.estimate.value) << '\n';
    out << key << ",radius," << Fmt(r.radius) << '\n';
    out << key << ",evaluations," << r.estimate.evaluations << '\n';
    out << key << ",failed_probes," << r.estimate.failed_probes << '\n';
  }
  return out.str();
}

nlohmann::ordered_json robustness_to_json(const RobustnessConfig& config,
                                          const RobustnessReport& report) {
  nlohmann::ordered_json j;
  j["config"] = {{"epsilon", config.epsilon},
                 {"budget", config.budget},
                 {"refine_steps", config.refine_steps},
                 {"seeds", config.seeds},
                 {"n_instances", config.n_instances}};
  auto records = nlohmann::ordered_json::array();
  for (const auto& r : report.records) {
    records.push_back({{"dataset", r.dataset},
                       {"row", r.row},
                       {"seed", r.seed},
                       {"radius", r.radius},
                       {"lipschitz", r.estimate.value},
                       {"evaluations", r.estimate.evaluations},
                       {"failed_probes", r.estimate.failed_probes}});
  }
  j["records"] = records;
  auto summaries = nlohmann::ordered_json::array();
  for (const auto& s : report.summaries) {
    summaries.push_back({{"dataset", s.dataset},
                         {"count", s.count},
                         {"min", s.min},
                         {"q25", s.q25},
                         {"median", s.median},
                         {"q75", s.q75},
                         {"max", s.max},
                         {"mean", s.mean},
                         {"fraction_below_one", s.fraction_below_one}});
  }
  j["summaries"] = summaries;
  return j;
}

std::string robustness_to_svg(const RobustnessReport& report) {
  std::vector<BoxSeries> boxes;
  for (const auto& s : report.summaries) {
    boxes.push_back({s.dataset, s.min, s.q25, s.median, s.q75, s.max});
  }
  return render_box_chart("Local Lipschitz estimates of WoE explanations",
                          "L(x)", boxes, 1.0);
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace woe
