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

#include "woe/estimation_benchmark.h"

#include <algorithm>

#include "woe/error.h"
#include "woe/metrics.h"
#include "woe/partition.h"
#include "woe/woe.h"

namespace woe {
namespace {

std::vector<double> PerFeatureWoe(const ModelHandle& model,
                                  std::span<const double> x, int y,
                                  const FeaturePartition& singletons) {
  const ClassSet hypothesis{y};
  const ClassSet alternative = ClassSet::All(model.num_classes()).minus(hypothesis);
  const LikelihoodEvaluator eval(model, x);
  std::vector<int> order(singletons.num_atoms());
  for (int a = 0; a < singletons.num_atoms(); ++a) order[a] = a;
  return decompose_woe(eval, hypothesis, alternative, singletons, order)
      .atom_woe;
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

void EstimationConfig::Validate() const {
  if (dims.empty() || n_fits.empty() || seeds.empty()) {
    throw InvalidArgument("estimation grid must be nonempty");
  }
  for (int d : dims) {
    if (d < 1) throw InvalidArgument("dims must be positive");
  }
  for (int n : n_fits) {
    if (n < 1) throw InvalidArgument("n_fits must be positive");
  }
  if (n_train < 2 * n_classes) {
    throw InvalidArgument("n_train must allow 2 samples per class");
  }
  if (n_test < 1) throw InvalidArgument("n_test must be positive");
  if (n_classes < 2) throw InvalidArgument("n_classes must be >= 2");
}

double EstimationReport::MeanMse(int dim, int n_fit) const {
  std::vector<double> v;
  for (const auto& c : cells) {
    if (c.dim == dim && c.n_fit == n_fit) v.push_back(c.mse);
  }
  return Mean(v);
}

double EstimationReport::MeanNdcg(int dim, int n_fit) const {
  std::vector<double> v;
  for (const auto& c : cells) {
    if (c.dim == dim && c.n_fit == n_fit) v.push_back(c.ndcg);
  }
  return Mean(v);
}

SurrogateFactory default_surrogate_factory() {
  return [](const ModelHandle&, const ModelHandle& black_box,
            const RowMatrix& fit_rows, double smoothing) {
    return fit_surrogate(black_box, fit_rows, smoothing);
  };
}

EstimationReport run_estimation_benchmark(const EstimationConfig& config,
                                          const SurrogateFactory& factory) {
  config.Validate();
  const int max_fit = *std::max_element(config.n_fits.begin(),
                                        config.n_fits.end());
  std::vector<int> n_fits = config.n_fits;
  std::sort(n_fits.begin(), n_fits.end());
  std::vector<int> dims = config.dims;
  std::sort(dims.begin(), dims.end());

  EstimationReport report;
  for (int dim : dims) {
    for (uint64_t seed : config.seeds) {
      const std::string where =
          "d=" + std::to_string(dim) + ", seed=" + std::to_string(seed);
      SyntheticSpec spec;
      spec.dim = dim;
      spec.n_classes = config.n_classes;
      spec.n_samples = config.n_train + config.n_test + max_fit;
      spec.seed = seed * 1000003ULL + static_cast<uint64_t>(dim);
      const SyntheticData synthetic = generate_synthetic(spec);
      const Dataset& data = synthetic.data;

      ModelHandle true_model = [&] {
        try {
          return make_handle(
              fit_gnb(data.Slice(0, config.n_train),
                      {.smoothing = config.smoothing}),
              data);
        } catch (const Error& e) {
          throw Error(where + ": fitting the true model: " + e.what());
        }
      }();
      const ModelHandle black_box(
          as_black_box(true_model, "true_gnb"), true_model.class_names(),
          true_model.feature_names());
      const FeaturePartition singletons =
          FeaturePartition::Singletons(data.feature_names());

      const int test_begin = config.n_train;
      const int fit_begin = config.n_train + config.n_test;
      std::vector<std::vector<double>> true_woe;
      std::vector<int> predicted;
      for (int i = test_begin; i < fit_begin; ++i) {
        const int y = predict(true_model, data.row(i));
        predicted.push_back(y);
        true_woe.push_back(PerFeatureWoe(true_model, data.row(i), y, singletons));
      }

      for (int n_fit : n_fits) {
        const RowMatrix fit_rows =
            data.features().middleRows(fit_begin, n_fit);
        SurrogateModel surrogate = [&] {
          try {
            return factory(true_model, black_box, fit_rows, config.smoothing);
          } catch (const Error& e) {
            throw Error(where + ", n_fit=" + std::to_string(n_fit) + ": " +
                        e.what());
          }
        }();
        const ModelHandle estimator = surrogate.AsModel();
        EstimationCell cell{dim, n_fit, seed, 0.0, 0.0, 0, 0};
        std::vector<double> mses;
        std::vector<double> ndcgs;
        for (int t = 0; t < config.n_test; ++t) {
          const int inner = surrogate.ToSurrogateClass(predicted[t]);
          if (inner < 0) {
            ++cell.skipped_instances;
            continue;
          }
          const std::vector<double> est =
              PerFeatureWoe(estimator, data.row(test_begin + t), inner,
                            singletons);
          mses.push_back(mse(true_woe[t], est));
          ndcgs.push_back(signed_ndcg(true_woe[t], est).value);
        }
        cell.n_instances = static_cast<int>(mses.size());
        cell.mse = Mean(mses);
        cell.ndcg = Mean(ndcgs);
        report.cells.push_back(cell);
      }
    }
  }
  std::stable_sort(report.cells.begin(), report.cells.end(),
                   [](const EstimationCell& a, const EstimationCell& b) {
                     if (a.dim != b.dim) return a.dim < b.dim;
                     return a.n_fit < b.n_fit;
                   });
  return report;
}

}  // namespace woe
