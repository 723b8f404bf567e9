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

#ifndef WOE_EXPLAINER_H_
#define WOE_EXPLAINER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "woe/class_set.h"
#include "woe/models.h"
#include "woe/partition.h"

namespace woe {

enum class SubsetSearch { kExhaustive, kGreedy };
enum class AtomOrderPolicy { kGiven, kRandom, kByAbsConditionalWoe };
enum class ExplainMode { kSequential, kOneShot };

std::string to_string(SubsetSearch v);
std::string to_string(AtomOrderPolicy v);
std::string to_string(ExplainMode v);
SubsetSearch parse_subset_search(const std::string& s);
AtomOrderPolicy parse_atom_order_policy(const std::string& s);
ExplainMode parse_explain_mode(const std::string& s);

struct ExplainerConfig {
  // Hypothesis selection maximizes woe(U / parent \ U) - reg_weight * R(|U|)
  // with R(s) = |s - parent/2|^reg_exponent, normalized to [0, 1].
  double reg_exponent = 2.0;
  double reg_weight = 1.0;
  // Atoms with |woe| >= salience_threshold are flagged salient.
  double salience_threshold = 2.0;
  // kExhaustive enumerates every admissible subset while the parent set has
  // at most `exhaustive_limit` classes and falls back to greedy beyond that.
  SubsetSearch subset_search = SubsetSearch::kExhaustive;
  int exhaustive_limit = 12;
  AtomOrderPolicy atom_order_policy = AtomOrderPolicy::kByAbsConditionalWoe;
  uint64_t seed = 0;  // for AtomOrderPolicy::kRandom
  // kOneShot contrasts the prediction with all other classes in one step.
  ExplainMode mode = ExplainMode::kSequential;

  void Validate() const;
};

struct ExplanationStep {
  ClassSet kept;
  ClassSet ruled_out;
  double prior_log_odds = 0.0;
  std::vector<double> atom_woes;  // indexed by atom of the partition
  std::vector<int> atom_order;    // conditioning order used for atom_woes
  double total_woe = 0.0;         // sum of atom_woes
  std::vector<bool> salient;      // |atom_woes[i]| >= threshold
  int clamped = 0;

  double posterior_log_odds() const { return prior_log_odds + total_woe; }
};

struct Explanation {
  std::vector<double> instance;
  int predicted_class = 0;
  std::vector<ExplanationStep> steps;
  FeaturePartition partition;
  ExplainerConfig config;
  std::vector<std::string> class_names;
  std::vector<std::string> feature_names;
};

// Normalized cardinality penalty; 0 at half the parent size, 1 at the
// admissible size farthest from half. Requires 1 <= candidate < parent.
double regularizer(int candidate_size, int parent_size, double exponent);

// Picks the kept set for one step: a strict subset of `parent` containing
// `y_star`. Ties in the objective go to the larger posterior mass of the set,
// then to the lexicographically smaller set.
ClassSet select_hypothesis(const ModelHandle& model, std::span<const double> x,
                           const ClassSet& parent, int y_star,
                           const ExplainerConfig& config);
ClassSet select_hypothesis(const LikelihoodEvaluator& eval,
                           const ClassSet& parent, int y_star,
                           const ExplainerConfig& config);

// Sequential explanation: classes are ruled out step by step until only the
// prediction remains. `predicted` overrides the model's own prediction (used
// for surrogates of black boxes).
Explanation explain(const ModelHandle& model, std::span<const double> x,
                    const FeaturePartition& partition,
                    const ExplainerConfig& config,
                    std::optional<int> predicted = std::nullopt);

// Atom indices with |woe| >= threshold, by decreasing |woe| (ties by index).
std::vector<int> salient_atoms(const ExplanationStep& step, double threshold);

}  // namespace woe

#endif  // WOE_EXPLAINER_H_
