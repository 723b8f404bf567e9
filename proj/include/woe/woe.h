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

#ifndef WOE_WOE_H_
#define WOE_WOE_H_

#include <span>
#include <vector>

#include "woe/class_set.h"
#include "woe/models.h"
#include "woe/partition.h"

namespace woe {

// All WoE values are natural-log likelihood ratios (nats).

// Evidence `instance` for "y in hypothesis" against "y in alternative",
// decomposed over the atoms of `partition`, taken in `atom_order`.
struct WoeQuery {
  std::span<const double> instance;
  ClassSet hypothesis;
  ClassSet alternative;
  const FeaturePartition* partition = nullptr;  // not owned
  // Permutation of atom indices; empty means partition order.
  std::vector<int> atom_order;

  void Validate(const ModelHandle& model) const;
  std::vector<int> ResolvedOrder() const;
};

struct WoeValue {
  double value = 0.0;
  int clamped = 0;  // likelihood terms floored while computing `value`
};

struct WoeDecomposition {
  std::vector<double> atom_woe;  // indexed by atom, not by position
  std::vector<int> atom_order;   // order in which atoms were conditioned
  double total = 0.0;            // sum of atom_woe
  int clamped = 0;
};

// log P(e|h) - log P(e|h'). Throws on non-finite input.
double woe_from_log_likelihoods(double log_pe_h, double log_pe_h_bar);

// woe(y in U / y in U' : X = x) over all features.
WoeValue total_woe(const ModelHandle& model, const WoeQuery& query);
WoeValue total_woe(const LikelihoodEvaluator& eval, const ClassSet& hypothesis,
                   const ClassSet& alternative);

// WoE of the atom at `position` (0-based, within the resolved order),
// conditioned on the atoms before it.
WoeValue conditional_atom_woe(const ModelHandle& model, const WoeQuery& query,
                              int position);
WoeValue conditional_atom_woe(const LikelihoodEvaluator& eval,
                              const ClassSet& hypothesis,
                              const ClassSet& alternative,
                              std::span<const int> prefix_indices,
                              std::span<const int> atom_indices);

// Chain-rule decomposition; the components sum to total_woe.
WoeDecomposition decompose_woe(const ModelHandle& model, const WoeQuery& query);
WoeDecomposition decompose_woe(const LikelihoodEvaluator& eval,
                               const ClassSet& hypothesis,
                               const ClassSet& alternative,
                               const FeaturePartition& partition,
                               std::span<const int> atom_order);

// log P(y in U) - log P(y in U').
double prior_log_odds(const ModelHandle& model, const ClassSet& hypothesis,
                      const ClassSet& alternative);

// Closed forms for binary models, class 1 against class 0.

// w.x + w0 - log(p1 / p0).
double logistic_total_woe(const LogisticModel& model,
                          std::span<const double> x);
// w_i x_i under the additive identification w0 = log(p1 / p0).
std::vector<double> logistic_feature_woe(const LogisticModel& model,
                                         std::span<const double> x);

// -1/2 [(x_i - mu_1i)^2 / s_1i - (x_i - mu_0i)^2 / s_0i] - 1/2 log(s_1i/s_0i).
double gnb_feature_woe(const GaussianNBModel& model, std::span<const double> x,
                       int feature);
// +1 when x_i is closer to class 1 than to class 0 in variance-normalized
// distance (log-variance included), -1 when farther, 0 on the boundary.
int gnb_atom_woe_sign(const GaussianNBModel& model, std::span<const double> x,
                      int feature);

// (x - mu_c)^T Sigma_c^{-1} (x - mu_c).
double mahalanobis_squared(const GaussianFullModel& model, int c,
                           std::span<const double> x);
// For LDA, total WoE of class 1 vs 0 is positive iff x is closer to mu_1.
bool lda_prefers_class1(const GaussianFullModel& model,
                        std::span<const double> x);

}  // namespace woe

#endif  // WOE_WOE_H_
