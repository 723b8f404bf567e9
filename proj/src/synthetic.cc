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

#include <random>
#include <string>

#include "woe/dataset.h"
#include "woe/error.h"

namespace woe {
namespace {

// Zero-padded so that lexicographic order (used by load_csv) matches index
// order.
std::vector<std::string> PaddedNames(const std::string& prefix, int count) {
  const int width = static_cast<int>(std::to_string(count - 1).size());
  std::vector<std::string> names;
  for (int i = 0; i < count; ++i) {
    std::string digits = std::to_string(i);
    names.push_back(prefix + std::string(width - digits.size(), '0') + digits);
  }
  return names;
}

}  // namespace

void SyntheticSpec::Validate() const {
  if (dim < 1) throw InvalidArgument("synthetic dim must be >= 1");
  if (n_classes < 2) throw InvalidArgument("synthetic n_classes must be >= 2");
  if (n_samples < n_classes) {
    throw InvalidArgument("synthetic n_samples must be >= n_classes");
  }
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  spec.Validate();
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> pick_class(0, spec.n_classes - 1);

  Eigen::MatrixXd means(spec.n_classes, spec.dim);
  for (int c = 0; c < spec.n_classes; ++c) {
    for (int j = 0; j < spec.dim; ++j) means(c, j) = normal(rng);
  }
  RowMatrix features(spec.n_samples, spec.dim);
  std::vector<int> labels(spec.n_samples);
  for (int i = 0; i < spec.n_samples; ++i) {
    const int y = pick_class(rng);
    labels[i] = y;
    for (int j = 0; j < spec.dim; ++j) features(i, j) = means(y, j) + normal(rng);
  }
  Dataset data(std::move(features), std::move(labels),
               PaddedNames("x", spec.dim), PaddedNames("class_", spec.n_classes));
  return {std::move(data), std::move(means)};
}

}  // namespace woe
