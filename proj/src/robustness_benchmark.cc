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

#include "woe/robustness_benchmark.h"

#include <algorithm>
#include <cmath>
#include <memory>

#include "woe/error.h"
#include "woe/partition.h"
#include "woe/woe.h"

namespace woe {
namespace {

double Quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

void RobustnessConfig::Validate() const {
  if (!(epsilon > 0)) throw InvalidArgument("epsilon must be > 0");
  if (budget < 2) throw InvalidArgument("budget must be >= 2");
  if (refine_steps < 0 || refine_steps >= budget) {
    throw InvalidArgument("refine_steps must be in [0, budget)");
  }
  if (seeds.empty()) throw InvalidArgument("need at least one seed");
  if (n_instances < 1) throw InvalidArgument("n_instances must be positive");
}

ExplanationFn woe_explanation_fn(const ModelHandle& model) {
  auto shared = std::make_shared<const ModelHandle>(model);
  auto singletons = std::make_shared<const FeaturePartition>(
      FeaturePartition::Singletons(model.feature_names()));
  return [shared, singletons](std::span<const double> x) {
    const LikelihoodEvaluator eval(*shared, x);
    const Eigen::VectorXd lp = posterior_log_probabilities(*shared, x);
    Eigen::Index y = 0;
    lp.maxCoeff(&y);
    const ClassSet hypothesis{static_cast<int>(y)};
    const ClassSet alternative =
        ClassSet::All(shared->num_classes()).minus(hypothesis);
    std::vector<int> order(singletons->num_atoms());
    for (int a = 0; a < singletons->num_atoms(); ++a) order[a] = a;
    return decompose_woe(eval, hypothesis, alternative, *singletons, order)
        .atom_woe;
  };
}

std::vector<RobustnessDataset> synthetic_robustness_datasets(
    int dim, const std::vector<int>& class_counts, int n_samples,
    uint64_t seed) {
  std::vector<RobustnessDataset> out;
  for (int k : class_counts) {
    SyntheticSpec spec;
    spec.dim = dim;
    spec.n_classes = k;
    spec.n_samples = n_samples;
    spec.seed = seed + static_cast<uint64_t>(k);
    out.push_back({"synthetic_d" + std::to_string(dim) + "_k" + std::to_string(k),
                   generate_synthetic(spec).data});
  }
  return out;
}

RobustnessSummary summarize_robustness(const std::string& dataset,
                                       std::vector<double> values) {
  std::sort(values.begin(), values.end());
  RobustnessSummary s;
  s.dataset = dataset;
  s.count = static_cast<int>(values.size());
  if (values.empty()) return s;
  s.min = values.front();
  s.max = values.back();
  s.q25 = Quantile(values, 0.25);
  s.median = Quantile(values, 0.5);
  s.q75 = Quantile(values, 0.75);
  double sum = 0.0;
  int below = 0;
  for (double v : values) {
    sum += v;
    below += v < 1.0;
  }
  s.mean = sum / static_cast<double>(values.size());
  s.fraction_below_one = static_cast<double>(below) / values.size();
  return s;
}

RobustnessReport run_robustness_benchmark(
    const std::vector<RobustnessDataset>& datasets,
    const RobustnessConfig& config) {
  config.Validate();
  RobustnessReport report;
  for (const auto& ds : datasets) {
    const int n = ds.data.num_rows();
    if (n <= config.n_instances) {
      throw InvalidArgument("dataset '" + ds.name + "' has too few rows");
    }
    const Dataset train = ds.data.Slice(0, n - config.n_instances);
    ModelHandle model = [&] {
      try {
        return make_handle(fit_gnb(train), train);
      } catch (const Error& e) {
        throw Error("dataset '" + ds.name + "': " + e.what());
      }
    }();
    const Eigen::RowVectorXd range = train.features().colwise().maxCoeff() -
                                     train.features().colwise().minCoeff();
    const double radius = config.epsilon * range.mean();
    if (!(radius > 0)) {
      throw InvalidArgument("dataset '" + ds.name + "' has zero feature range");
    }
    const ExplanationFn fn = woe_explanation_fn(model);
    std::vector<double> values;
    for (int row = n - config.n_instances; row < n; ++row) {
      for (uint64_t seed : config.seeds) {
        LipschitzOptions options;
        options.radius = radius;
        options.budget = config.budget;
        options.refine_steps = config.refine_steps;
        options.seed = seed;
        RobustnessRecord rec{ds.name, row, seed, radius,
                             lipschitz_estimate(fn, ds.data.row(row), options)};
        values.push_back(rec.estimate.value);
        report.records.push_back(std::move(rec));
      }
    }
    report.summaries.push_back(summarize_robustness(ds.name, values));
  }
  return report;
}

}  // namespace woe
