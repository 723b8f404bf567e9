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

#ifndef WOE_ESTIMATION_BENCHMARK_H_
#define WOE_ESTIMATION_BENCHMARK_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "woe/models.h"
#include "woe/surrogate.h"

namespace woe {

// Finite-sample WoE estimation experiment. For each (dim, seed) a synthetic
// dataset is drawn; a GNB trained on `n_train` rows plays the "true" model
// and is queried only as a black box; a surrogate is fitted on `n_fit`
// further rows and its per-feature WoE on `n_test` held-out rows is compared
// with the true model's.
struct EstimationConfig {
  std::vector<int> dims = {10};
  std::vector<int> n_fits = {100, 1000, 10000};
  int n_train = 1000;
  int n_test = 10;
  std::vector<uint64_t> seeds = {0, 1, 2, 3, 4};
  int n_classes = 2;
  double smoothing = 1e-9;

  void Validate() const;
};

struct EstimationCell {
  int dim = 0;
  int n_fit = 0;
  uint64_t seed = 0;
  double mse = 0.0;   // mean over test instances
  double ndcg = 0.0;  // mean over test instances
  int n_instances = 0;
  int skipped_instances = 0;  // prediction absent from the surrogate
};

struct EstimationReport {
  std::vector<EstimationCell> cells;  // ordered by (dim, n_fit, seed)

  double MeanMse(int dim, int n_fit) const;
  double MeanNdcg(int dim, int n_fit) const;
};

// Builds the surrogate for one grid cell. The default fits a GNB surrogate
// on the black box's predictions over `fit_rows`.
using SurrogateFactory = std::function<SurrogateModel(
    const ModelHandle& true_model, const ModelHandle& black_box,
    const RowMatrix& fit_rows, double smoothing)>;

SurrogateFactory default_surrogate_factory();

EstimationReport run_estimation_benchmark(
    const EstimationConfig& config,
    const SurrogateFactory& factory = default_surrogate_factory());

}  // namespace woe

#endif  // WOE_ESTIMATION_BENCHMARK_H_
