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

#ifndef WOE_SURROGATE_H_
#define WOE_SURROGATE_H_

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "woe/dataset.h"
#include "woe/explainer.h"
#include "woe/models.h"

namespace woe {

// Class-conditional likelihood estimator fitted on a black box's own
// predictions. Classes the black box never predicted (or predicted only once)
// are dropped, so the surrogate's class indices are a subset of the black
// box's; `class_ids[i]` is the black-box class behind surrogate class i.
struct SurrogateModel {
  GaussianNBModel inner;
  std::vector<int> class_ids;
  std::string source;
  int n_fit = 0;
  std::vector<std::string> class_names;    // surrogate classes, in order
  std::vector<std::string> feature_names;
  std::vector<std::string> warnings;

  ModelHandle AsModel() const;
  // Surrogate index of a black-box class, or -1 when it was dropped.
  int ToSurrogateClass(int black_box_class) const;
};

// Queries the black box once per background row and fits a Gaussian NB on
// (row, prediction) pairs. Ground-truth labels are never used.
SurrogateModel fit_surrogate(const ModelHandle& black_box,
                             const RowMatrix& background,
                             double smoothing = 1e-9);

// Explains the black box's prediction for `x` with all priors and
// likelihoods taken from the surrogate. Issues exactly one black-box query.
// Class indices in the result refer to the surrogate's class list.
Explanation explain_black_box(const ModelHandle& black_box,
                              const SurrogateModel& surrogate,
                              std::span<const double> x,
                              const FeaturePartition& partition,
                              const ExplainerConfig& config);

// Model-file JSON of the inner GNB plus {"surrogate_of", "class_ids",
// "n_fit", "black_box_class_names"}.
nlohmann::json surrogate_to_json(const SurrogateModel& surrogate,
                                 const std::vector<std::string>&
                                     black_box_class_names);
SurrogateModel surrogate_from_json(const nlohmann::json& j);

}  // namespace woe

#endif  // WOE_SURROGATE_H_
