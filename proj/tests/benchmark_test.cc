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

#include <cmath>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "woe/error.h"
#include "woe/estimation_benchmark.h"
#include "woe/explainer.h"
#include "woe/report_io.h"
#include "woe/robustness_benchmark.h"
#include "woe/svg.h"
#include "woe/woe.h"

namespace woe {
namespace {

using ::testing::HasSubstr;
using ::testing::StartsWith;

EstimationConfig SmallEstimation() {
  EstimationConfig c;
  c.dims = {4};
  c.n_fits = {50, 5000};
  c.n_train = 300;
  c.n_test = 10;
  c.seeds = {0, 1, 2};
  return c;
}

TEST(EstimationBenchmark, MoreFitDataHelps) {
  const EstimationReport r = run_estimation_benchmark(SmallEstimation());
  ASSERT_EQ(r.cells.size(), 6u);
  EXPECT_GT(r.MeanMse(4, 50), r.MeanMse(4, 5000));
  for (const auto& c : r.cells) {
    EXPECT_GE(c.mse, 0.0);
    EXPECT_GE(c.ndcg, 0.0);
    EXPECT_LE(c.ndcg, 1.0);
    EXPECT_EQ(c.n_instances + c.skipped_instances, 10);
  }
}

TEST(EstimationBenchmark, Deterministic) {
  const EstimationReport a = run_estimation_benchmark(SmallEstimation());
  const EstimationReport b = run_estimation_benchmark(SmallEstimation());
  EXPECT_EQ(estimation_to_csv(a), estimation_to_csv(b));
}

TEST(EstimationBenchmark, InjectedTrueModelIsExact) {
  const SurrogateFactory oracle = [](const ModelHandle& truth,
                                     const ModelHandle&, const RowMatrix&,
                                     double) {
    SurrogateModel s;
    s.inner = *truth.get_if<GaussianNBModel>();
    s.class_names = truth.class_names();
    s.feature_names = truth.feature_names();
    for (int c = 0; c < truth.num_classes(); ++c) s.class_ids.push_back(c);
    return s;
  };
  EstimationConfig c = SmallEstimation();
  c.n_classes = 3;
  const EstimationReport r = run_estimation_benchmark(c, oracle);
  for (const auto& cell : r.cells) {
    EXPECT_EQ(cell.mse, 0.0);
    EXPECT_EQ(cell.ndcg, 1.0);
    EXPECT_EQ(cell.skipped_instances, 0);
  }
}

TEST(EstimationBenchmark, ErrorsNameGridCell) {
  const SurrogateFactory failing = [](const ModelHandle&, const ModelHandle&,
                                      const RowMatrix&, double) -> SurrogateModel {
    throw InvalidArgument("boom");
  };
  try {
    run_estimation_benchmark(SmallEstimation(), failing);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_THAT(e.what(), HasSubstr("d=4, seed=0, n_fit=50"));
  }
}

TEST(EstimationBenchmark, ValidatesConfig) {
  EstimationConfig c = SmallEstimation();
  c.n_fits = {};
  EXPECT_THROW(run_estimation_benchmark(c), InvalidArgument);
}

TEST(RobustnessBenchmark, SmallRun) {
  const auto datasets = synthetic_robustness_datasets(3, {2, 4}, 200, 0);
  ASSERT_EQ(datasets.size(), 2u);
  EXPECT_EQ(datasets[1].name, "synthetic_d3_k4");
  RobustnessConfig cfg;
  cfg.seeds = {0, 1};
  cfg.n_instances = 3;
  cfg.budget = 20;
  cfg.refine_steps = 5;
  const RobustnessReport r = run_robustness_benchmark(datasets, cfg);
  EXPECT_EQ(r.records.size(), 12u);
  ASSERT_EQ(r.summaries.size(), 2u);
  for (const auto& rec : r.records) {
    EXPECT_GT(rec.estimate.value, 0.0);
    EXPECT_EQ(rec.estimate.evaluations, 21);
    EXPECT_GE(rec.row, 197);
  }
  EXPECT_EQ(r.summaries[0].count, 6);
  EXPECT_LE(r.summaries[0].q25, r.summaries[0].median);
  EXPECT_LE(r.summaries[0].median, r.summaries[0].q75);

  const std::string csv = robustness_to_csv(r);
  EXPECT_THAT(csv, StartsWith("dataset,row,seed,metric,value\n"));
  EXPECT_THAT(csv, HasSubstr("synthetic_d3_k2,197,0,lipschitz,"));
  const auto j = robustness_to_json(cfg, r);
  EXPECT_EQ(j["records"].size(), 12u);
  EXPECT_EQ(j["summaries"][1]["dataset"], "synthetic_d3_k4");
  const std::string svg = robustness_to_svg(r);
  EXPECT_THAT(svg, StartsWith("<svg"));
  EXPECT_THAT(svg, HasSubstr("stroke-dasharray"));
}

TEST(RobustnessBenchmark, ExplanationFnIsPerFeatureWoe) {
  const auto datasets = synthetic_robustness_datasets(2, {2}, 100, 5);
  const GaussianNBModel gnb = fit_gnb(datasets[0].data);
  const ModelHandle m = make_handle(gnb, datasets[0].data);
  const ExplanationFn fn = woe_explanation_fn(m);
  const std::vector<double> x = {0.3, -0.2};
  const auto e = fn(x);
  const int sign = predict(m, x) == 1 ? 1 : -1;
  ASSERT_EQ(e.size(), 2u);
  for (int j = 0; j < 2; ++j) {
    EXPECT_NEAR(e[j], sign * gnb_feature_woe(gnb, x, j), 1e-10);
  }
}

TEST(RobustnessSummary, Quantiles) {
  const RobustnessSummary s =
      summarize_robustness("d", {0.5, 2.0, 1.0, 4.0, 3.0});
  EXPECT_EQ(s.count, 5);
  EXPECT_DOUBLE_EQ(s.min, 0.5);
  EXPECT_DOUBLE_EQ(s.median, 2.0);
  EXPECT_DOUBLE_EQ(s.max, 4.0);
  EXPECT_DOUBLE_EQ(s.fraction_below_one, 0.2);
}

TEST(ReportIo, EstimationFormats) {
  EstimationReport r;
  r.cells = {{10, 100, 0, 0.5, 0.9, 10, 0}, {10, 1000, 0, 0.25, 0.95, 10, 0}};
  const std::string csv = estimation_to_csv(r);
  EXPECT_EQ(csv,
            "d,n_fit,seed,metric,value\n"
            "10,100,0,mse,0.5\n10,100,0,ndcg,0.90000000000000002\n"
            "10,1000,0,mse,0.25\n10,1000,0,ndcg,0.94999999999999996\n");
  EstimationConfig c;
  c.n_fits = {100, 1000};
  c.seeds = {0};
  const auto j = estimation_to_json(c, r);
  EXPECT_EQ(j["means"].size(), 2u);
  EXPECT_EQ(j["means"][1]["mse"], 0.25);
  const std::string svg = estimation_to_svg(r);
  EXPECT_THAT(svg, StartsWith("<svg"));
  EXPECT_THAT(svg, HasSubstr("signed NDCG"));
  EXPECT_THAT(svg, HasSubstr("d = 10"));
}

TEST(Svg, ExplanationChartHasBarsAndPanel) {
  GaussianNBModel m;
  m.means = Eigen::MatrixXd::Random(3, 2);
  m.variances = Eigen::MatrixXd::Ones(3, 2);
  m.log_priors = Eigen::Vector3d::Constant(std::log(1.0 / 3));
  const ModelHandle h(m, {"flu", "cold", "allergy"}, {"fever", "cough"});
  const std::vector<double> x = {0.4, -0.3};
  const Explanation e =
      explain(h, x, FeaturePartition::Singletons(h.feature_names()), {});
  const std::string svg = render_explanation_svg(e);
  EXPECT_THAT(svg, StartsWith("<svg"));
  EXPECT_THAT(svg, HasSubstr("fever"));
  EXPECT_THAT(svg, HasSubstr("prior log odds"));
  EXPECT_THAT(svg, HasSubstr("posterior log odds"));
  EXPECT_THAT(svg, HasSubstr("Step " + std::to_string(e.steps.size())));
}

TEST(Svg, EscapesLabels) {
  const std::string svg =
      render_line_chart("a<b", "x", "y", {{"s&t", {1, 10}, {0, 1}}});
  EXPECT_THAT(svg, HasSubstr("a&lt;b"));
  EXPECT_THAT(svg, HasSubstr("s&amp;t"));
}

}  // namespace
}  // namespace woe
