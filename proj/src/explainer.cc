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

#include "woe/explainer.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "woe/error.h"
#include "woe/woe.h"

namespace woe {
namespace {

constexpr double kTieTolerance = 1e-12;

bool NearlyEqual(double a, double b) {
  return std::abs(a - b) <=
         kTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Candidate {
  ClassSet set;
  double objective = 0.0;
  double log_posterior_mass = 0.0;
};

// True when `a` should replace `b` as the incumbent.
bool Better(const Candidate& a, const Candidate& b) {
  if (!NearlyEqual(a.objective, b.objective)) return a.objective > b.objective;
  if (!NearlyEqual(a.log_posterior_mass, b.log_posterior_mass)) {
    return a.log_posterior_mass > b.log_posterior_mass;
  }
  return a.set < b.set;
}

Candidate Evaluate(const LikelihoodEvaluator& eval, const ClassSet& parent,
                   ClassSet set, const ExplainerConfig& config) {
  Candidate c;
  const ClassSet rest = parent.minus(set);
  c.objective = total_woe(eval, set, rest).value -
                config.reg_weight *
                    regularizer(set.size(), parent.size(), config.reg_exponent);
  c.log_posterior_mass = eval.full_class_set_log_likelihood(set).value +
                         eval.log_prior_mass(set);
  c.set = std::move(set);
  return c;
}

ClassSet ExhaustiveSearch(const LikelihoodEvaluator& eval,
                          const ClassSet& parent, int y_star,
                          const ExplainerConfig& config) {
  std::vector<int> others;
  for (int c : parent) {
    if (c != y_star) others.push_back(c);
  }
  const uint64_t n_masks = uint64_t{1} << others.size();
  std::optional<Candidate> best;
  // The all-ones mask would keep the whole parent and is not admissible.
  for (uint64_t mask = 0; mask + 1 < n_masks; ++mask) {
    std::vector<int> members = {y_star};
    for (size_t i = 0; i < others.size(); ++i) {
      if (mask & (uint64_t{1} << i)) members.push_back(others[i]);
    }
    Candidate c = Evaluate(eval, parent, ClassSet(std::move(members)), config);
    if (!best || Better(c, *best)) best = std::move(c);
  }
  return best->set;
}

// Ranks the other classes by singleton-vs-rest WoE and scans the prefix sets
// {y*}, {y*, r1}, {y*, r1, r2}, ...
ClassSet GreedySearch(const LikelihoodEvaluator& eval, const ClassSet& parent,
                      int y_star, const ExplainerConfig& config) {
  std::vector<std::pair<double, int>> ranked;
  for (int c : parent) {
    if (c == y_star) continue;
    const ClassSet single{c};
    ranked.emplace_back(total_woe(eval, single, parent.minus(single)).value, c);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<int> members = {y_star};
  std::optional<Candidate> best;
  for (size_t i = 0; i + 1 <= ranked.size(); ++i) {
    Candidate c = Evaluate(eval, parent, ClassSet(members), config);
    if (!best || Better(c, *best)) best = std::move(c);
    members.push_back(ranked[i].second);
  }
  return best->set;
}

std::vector<int> OrderByAbsConditionalWoe(const LikelihoodEvaluator& eval,
                                          const ClassSet& hypothesis,
                                          const ClassSet& alternative,
                                          const FeaturePartition& partition) {
  const int m = partition.num_atoms();
  std::vector<bool> used(m, false);
  std::vector<int> order;
  std::vector<int> prefix;
  for (int pos = 0; pos < m; ++pos) {
    int best = -1;
    double best_abs = -1.0;
    for (int a = 0; a < m; ++a) {
      if (used[a]) continue;
      const double w = std::abs(conditional_atom_woe(eval, hypothesis,
                                                     alternative, prefix,
                                                     partition.atom(a))
                                    .value);
      if (w > best_abs) {
        best_abs = w;
        best = a;
      }
    }
    used[best] = true;
    order.push_back(best);
    const auto& atom = partition.atom(best);
    prefix.insert(prefix.end(), atom.begin(), atom.end());
  }
  return order;
}

template <typename Fn>
auto WithStepContext(int step, Fn&& fn) -> decltype(fn()) {
  const std::string where = "step " + std::to_string(step) + ": ";
  try {
    return fn();
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(where + e.what());
  } catch (const Unsupported& e) {
    throw Unsupported(where + e.what());
  } catch (const NotFound& e) {
    throw NotFound(where + e.what());
  } catch (const Error& e) {
    throw Error(where + e.what());
  }
}

}  // namespace

std::string to_string(SubsetSearch v) {
  return v == SubsetSearch::kExhaustive ? "exhaustive" : "greedy";
}

std::string to_string(AtomOrderPolicy v) {
  switch (v) {
    case AtomOrderPolicy::kGiven:
      return "given";
    case AtomOrderPolicy::kRandom:
      return "random";
    case AtomOrderPolicy::kByAbsConditionalWoe:
      return "by_abs_conditional_woe";
  }
  return "given";
}

std::string to_string(ExplainMode v) {
  return v == ExplainMode::kSequential ? "sequential" : "oneshot";
}

SubsetSearch parse_subset_search(const std::string& s) {
  if (s == "exhaustive") return SubsetSearch::kExhaustive;
  if (s == "greedy") return SubsetSearch::kGreedy;
  throw InvalidArgument("subset_search must be exhaustive or greedy, got '" +
                        s + "'");
}

AtomOrderPolicy parse_atom_order_policy(const std::string& s) {
  if (s == "given") return AtomOrderPolicy::kGiven;
  if (s == "random") return AtomOrderPolicy::kRandom;
  if (s == "by_abs_conditional_woe") {
    return AtomOrderPolicy::kByAbsConditionalWoe;
  }
  throw InvalidArgument(
      "atom_order_policy must be given, random or by_abs_conditional_woe, "
      "got '" + s + "'");
}

ExplainMode parse_explain_mode(const std::string& s) {
  if (s == "sequential") return ExplainMode::kSequential;
  if (s == "oneshot") return ExplainMode::kOneShot;
  throw InvalidArgument("mode must be oneshot or sequential, got '" + s + "'");
}

void ExplainerConfig::Validate() const {
  if (!(reg_exponent > 0)) throw InvalidArgument("reg_exponent must be > 0");
  if (!(reg_weight >= 0)) throw InvalidArgument("reg_weight must be >= 0");
  if (!(salience_threshold >= 0)) throw InvalidArgument("tau must be >= 0");
  if (exhaustive_limit < 2) {
    throw InvalidArgument("exhaustive_limit must be >= 2");
  }
  if (exhaustive_limit > 30) {
    throw InvalidArgument("exhaustive_limit above 30 is not supported");
  }
}

double regularizer(int candidate_size, int parent_size, double exponent) {
  if (candidate_size < 1 || candidate_size >= parent_size) {
    throw InvalidArgument("regularizer needs 1 <= candidate < parent");
  }
  const double half = 0.5 * parent_size;
  double worst = 0.0;
  for (int s = 1; s < parent_size; ++s) {
    worst = std::max(worst, std::pow(std::abs(s - half), exponent));
  }
  if (worst == 0.0) return 0.0;
  return std::pow(std::abs(candidate_size - half), exponent) / worst;
}

ClassSet select_hypothesis(const LikelihoodEvaluator& eval,
                           const ClassSet& parent, int y_star,
                           const ExplainerConfig& config) {
  config.Validate();
  if (parent.size() < 2) {
    throw InvalidArgument("parent set needs at least 2 classes");
  }
  if (!parent.contains(y_star)) {
    throw InvalidArgument("predicted class " + std::to_string(y_star) +
                          " not in parent " + parent.ToString());
  }
  if (parent.size() == 2) return ClassSet{y_star};
  if (config.subset_search == SubsetSearch::kExhaustive &&
      parent.size() <= config.exhaustive_limit) {
    return ExhaustiveSearch(eval, parent, y_star, config);
  }
  return GreedySearch(eval, parent, y_star, config);
}

ClassSet select_hypothesis(const ModelHandle& model, std::span<const double> x,
                           const ClassSet& parent, int y_star,
                           const ExplainerConfig& config) {
  const LikelihoodEvaluator eval(model, x);
  return select_hypothesis(eval, parent, y_star, config);
}

Explanation explain(const ModelHandle& model, std::span<const double> x,
                    const FeaturePartition& partition,
                    const ExplainerConfig& config,
                    std::optional<int> predicted) {
  config.Validate();
  if (partition.num_features() != model.num_features()) {
    throw InvalidArgument("partition covers " +
                          std::to_string(partition.num_features()) +
                          " features, model has " +
                          std::to_string(model.num_features()));
  }
  const LikelihoodEvaluator eval(model, x);
  const int k = model.num_classes();
  const int y_star = predicted ? *predicted : predict(model, x);
  if (y_star < 0 || y_star >= k) {
    throw InvalidArgument("predicted class " + std::to_string(y_star) +
                          " out of range");
  }

  Explanation out{std::vector<double>(x.begin(), x.end()),
                  y_star,
                  {},
                  partition,
                  config,
                  model.class_names(),
                  model.feature_names()};

  std::vector<int> fixed_order(partition.num_atoms());
  std::iota(fixed_order.begin(), fixed_order.end(), 0);
  if (config.atom_order_policy == AtomOrderPolicy::kRandom) {
    std::mt19937_64 rng(config.seed);
    std::shuffle(fixed_order.begin(), fixed_order.end(), rng);
  }

  ClassSet parent = ClassSet::All(k);
  while (parent.size() > 1) {
    const int step_index = static_cast<int>(out.steps.size());
    ExplanationStep step = WithStepContext(step_index, [&] {
      ExplanationStep s;
      s.kept = config.mode == ExplainMode::kOneShot
                   ? ClassSet{y_star}
                   : select_hypothesis(eval, parent, y_star, config);
      s.ruled_out = parent.minus(s.kept);
      s.prior_log_odds =
          eval.log_prior_mass(s.kept) - eval.log_prior_mass(s.ruled_out);
      s.atom_order = config.atom_order_policy ==
                             AtomOrderPolicy::kByAbsConditionalWoe
                         ? OrderByAbsConditionalWoe(eval, s.kept, s.ruled_out,
                                                    partition)
                         : fixed_order;
      WoeDecomposition dec =
          decompose_woe(eval, s.kept, s.ruled_out, partition, s.atom_order);
      s.atom_woes = std::move(dec.atom_woe);
      s.total_woe = dec.total;
      s.clamped = dec.clamped;
      for (double w : s.atom_woes) {
        s.salient.push_back(std::abs(w) >= config.salience_threshold);
      }
      return s;
    });
    parent = step.kept;
    out.steps.push_back(std::move(step));
  }
  return out;
}

std::vector<int> salient_atoms(const ExplanationStep& step, double threshold) {
  std::vector<int> out;
  for (size_t i = 0; i < step.atom_woes.size(); ++i) {
    if (std::abs(step.atom_woes[i]) >= threshold) {
      out.push_back(static_cast<int>(i));
    }
  }
  std::stable_sort(out.begin(), out.end(), [&](int a, int b) {
    return std::abs(step.atom_woes[a]) > std::abs(step.atom_woes[b]);
  });
  return out;
}

}  // namespace woe
