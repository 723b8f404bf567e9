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

#ifndef WOE_ROBUSTNESS_BENCHMARK_H_
#define WOE_ROBUSTNESS_BENCHMARK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "woe/dataset.h"
#include "woe/lipschitz.h"
#include "woe/models.h"

namespace woe {

struct RobustnessConfig {
  // Ball radius as a fraction of the mean per-feature range of the training
  // data.
  double epsilon = 0.1;
  int budget = 60;
  int refine_steps = 10;
  std::vector<uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  // Held-out rows explained per dataset (taken from the end of the data).
  int n_instances = 10;

  void Validate() const;
};

struct RobustnessDataset {
  std::string name;
  Dataset data;
};

struct RobustnessRecord {
  std::string dataset;
  int row = 0;
  uint64_t seed = 0;
  double radius = 0.0;
  LipschitzEstimate estimate;
};

struct RobustnessSummary {
  std::string dataset;
  int count = 0;
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double fraction_below_one = 0.0;  // share of estimates under L = 1
};

struct RobustnessReport {
  std::vector<RobustnessRecord> records;
  std::vector<RobustnessSummary> summaries;  // one per dataset, input order
};

// E(x): per-feature WoE of the model's prediction at x against all other
// classes, features conditioned in index order. The prediction is recomputed
// at every x.
ExplanationFn woe_explanation_fn(const ModelHandle& model);

// Synthetic class-conditional Gaussian datasets, one per class count.
std::vector<RobustnessDataset> synthetic_robustness_datasets(
    int dim, const std::vector<int>& class_counts, int n_samples,
    uint64_t seed);

// Trains a GNB on all but the last `n_instances` rows of each dataset and
// estimates the local Lipschitz constant of its WoE explanations at each held
// out row, once per seed.
RobustnessReport run_robustness_benchmark(
    const std::vector<RobustnessDataset>& datasets,
    const RobustnessConfig& config);

RobustnessSummary summarize_robustness(const std::string& dataset,
                                       std::vector<double> values);

}  // namespace woe

#endif  // WOE_ROBUSTNESS_BENCHMARK_H_
