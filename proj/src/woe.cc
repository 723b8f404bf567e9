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

#include "woe/woe.h"

#include <cmath>

#include "woe/error.h"

namespace woe {
namespace {

void CheckPair(const ModelHandle& model, const ClassSet& hypothesis,
               const ClassSet& alternative) {
  if (hypothesis.empty() || alternative.empty()) {
    throw InvalidArgument("hypothesis and alternative must be nonempty");
  }
  if (hypothesis.intersects(alternative)) {
    throw InvalidArgument("hypothesis " + hypothesis.ToString() +
                          " and alternative " + alternative.ToString() +
                          " overlap");
  }
  const int k = model.num_classes();
  if (hypothesis.members().back() >= k || alternative.members().back() >= k) {
    throw InvalidArgument("class set references a class outside [0, " +
                          std::to_string(k) + ")");
  }
}

void CheckBinary(int k) {
  if (k != 2) throw InvalidArgument("closed form requires a binary model");
}

}  // namespace

void WoeQuery::Validate(const ModelHandle& model) const {
  if (static_cast<int>(instance.size()) != model.num_features()) {
    throw InvalidArgument("instance has " + std::to_string(instance.size()) +
                          " values, model expects " +
                          std::to_string(model.num_features()));
  }
  CheckPair(model, hypothesis, alternative);
  if (partition == nullptr) throw InvalidArgument("query has no partition");
  if (partition->num_features() != model.num_features()) {
    throw InvalidArgument("partition covers " +
                          std::to_string(partition->num_features()) +
                          " features, model has " +
                          std::to_string(model.num_features()));
  }
  if (!atom_order.empty()) {
    const int m = partition->num_atoms();
    if (static_cast<int>(atom_order.size()) != m) {
      throw InvalidArgument("atom order must list all " + std::to_string(m) +
                            " atoms");
    }
    std::vector<bool> seen(m, false);
    for (int a : atom_order) {
      if (a < 0 || a >= m || seen[a]) {
        throw InvalidArgument("atom order is not a permutation");
      }
      seen[a] = true;
    }
  }
}

std::vector<int> WoeQuery::ResolvedOrder() const {
  if (!atom_order.empty()) return atom_order;
  std::vector<int> order(partition->num_atoms());
  for (int a = 0; a < partition->num_atoms(); ++a) order[a] = a;
  return order;
}

double woe_from_log_likelihoods(double log_pe_h, double log_pe_h_bar) {
  if (!std::isfinite(log_pe_h) || !std::isfinite(log_pe_h_bar)) {
    throw InvalidArgument("log-likelihoods must be finite");
  }
  return log_pe_h - log_pe_h_bar;
}

WoeValue total_woe(const LikelihoodEvaluator& eval, const ClassSet& hypothesis,
                   const ClassSet& alternative) {
  CheckPair(eval.model(), hypothesis, alternative);
  const LogValue h = eval.full_class_set_log_likelihood(hypothesis);
  const LogValue a = eval.full_class_set_log_likelihood(alternative);
  return {woe_from_log_likelihoods(h.value, a.value), h.clamped + a.clamped};
}

WoeValue total_woe(const ModelHandle& model, const WoeQuery& query) {
  CheckPair(model, query.hypothesis, query.alternative);
  const LikelihoodEvaluator eval(model, query.instance);
  return total_woe(eval, query.hypothesis, query.alternative);
}

WoeValue conditional_atom_woe(const LikelihoodEvaluator& eval,
                              const ClassSet& hypothesis,
                              const ClassSet& alternative,
                              std::span<const int> prefix_indices,
                              std::span<const int> atom_indices) {
  std::vector<int> extended(prefix_indices.begin(), prefix_indices.end());
  extended.insert(extended.end(), atom_indices.begin(), atom_indices.end());
  const LogValue h_new = eval.class_set_log_likelihood(extended, hypothesis);
  const LogValue h_old = eval.class_set_log_likelihood(prefix_indices, hypothesis);
  const LogValue a_new = eval.class_set_log_likelihood(extended, alternative);
  const LogValue a_old =
      eval.class_set_log_likelihood(prefix_indices, alternative);
  return {(h_new.value - h_old.value) - (a_new.value - a_old.value),
          h_new.clamped + h_old.clamped + a_new.clamped + a_old.clamped};
}

WoeValue conditional_atom_woe(const ModelHandle& model, const WoeQuery& query,
                              int position) {
  query.Validate(model);
  const std::vector<int> order = query.ResolvedOrder();
  if (position < 0 || position >= static_cast<int>(order.size())) {
    throw InvalidArgument("atom position " + std::to_string(position) +
                          " out of range");
  }
  std::vector<int> prefix;
  for (int t = 0; t < position; ++t) {
    const auto& atom = query.partition->atom(order[t]);
    prefix.insert(prefix.end(), atom.begin(), atom.end());
  }
  const LikelihoodEvaluator eval(model, query.instance);
  return conditional_atom_woe(eval, query.hypothesis, query.alternative, prefix,
                              query.partition->atom(order[position]));
}

WoeDecomposition decompose_woe(const LikelihoodEvaluator& eval,
                               const ClassSet& hypothesis,
                               const ClassSet& alternative,
                               const FeaturePartition& partition,
                               std::span<const int> atom_order) {
  CheckPair(eval.model(), hypothesis, alternative);
  WoeDecomposition out;
  out.atom_woe.assign(partition.num_atoms(), 0.0);
  out.atom_order.assign(atom_order.begin(), atom_order.end());
  std::vector<int> prefix;
  double h_prev = 0.0;
  double a_prev = 0.0;
  for (int a : atom_order) {
    const auto& atom = partition.atom(a);
    prefix.insert(prefix.end(), atom.begin(), atom.end());
    const LogValue h = eval.class_set_log_likelihood(prefix, hypothesis);
    const LogValue alt = eval.class_set_log_likelihood(prefix, alternative);
    out.atom_woe[a] = (h.value - h_prev) - (alt.value - a_prev);
    out.clamped += h.clamped + alt.clamped;
    h_prev = h.value;
    a_prev = alt.value;
  }
  for (double w : out.atom_woe) out.total += w;
  return out;
}

WoeDecomposition decompose_woe(const ModelHandle& model,
                               const WoeQuery& query) {
  query.Validate(model);
  const LikelihoodEvaluator eval(model, query.instance);
  const std::vector<int> order = query.ResolvedOrder();
  return decompose_woe(eval, query.hypothesis, query.alternative,
                       *query.partition, order);
}

double prior_log_odds(const ModelHandle& model, const ClassSet& hypothesis,
                      const ClassSet& alternative) {
  CheckPair(model, hypothesis, alternative);
  const Eigen::VectorXd lp = log_priors(model);
  std::vector<double> h;
  std::vector<double> a;
  for (int c : hypothesis) h.push_back(lp(c));
  for (int c : alternative) a.push_back(lp(c));
  return log_sum_exp(h) - log_sum_exp(a);
}

double logistic_total_woe(const LogisticModel& model,
                          std::span<const double> x) {
  if (static_cast<int>(x.size()) != model.num_features()) {
    throw InvalidArgument("instance arity mismatch");
  }
  double z = model.bias;
  for (int j = 0; j < model.num_features(); ++j) z += model.weights(j) * x[j];
  return z - (model.log_priors(1) - model.log_priors(0));
}

std::vector<double> logistic_feature_woe(const LogisticModel& model,
                                         std::span<const double> x) {
  if (static_cast<int>(x.size()) != model.num_features()) {
    throw InvalidArgument("instance arity mismatch");
  }
  std::vector<double> out(x.size());
  for (size_t j = 0; j < x.size(); ++j) out[j] = model.weights(j) * x[j];
  return out;
}

double gnb_feature_woe(const GaussianNBModel& model, std::span<const double> x,
                       int feature) {
  CheckBinary(model.num_classes());
  const double s1 = model.variances(1, feature);
  const double s0 = model.variances(0, feature);
  const double d1 = x[feature] - model.means(1, feature);
  const double d0 = x[feature] - model.means(0, feature);
  return -0.5 * (d1 * d1 / s1 - d0 * d0 / s0) - 0.5 * std::log(s1 / s0);
}

int gnb_atom_woe_sign(const GaussianNBModel& model, std::span<const double> x,
                      int feature) {
  CheckBinary(model.num_classes());
  const double s1 = model.variances(1, feature);
  const double s0 = model.variances(0, feature);
  const double d1 = x[feature] - model.means(1, feature);
  const double d0 = x[feature] - model.means(0, feature);
  const double dist1 = d1 * d1 / s1 + std::log(s1);
  const double dist0 = d0 * d0 / s0 + std::log(s0);
  const double gap = dist0 - dist1;
  if (std::abs(gap) <= 1e-12) return 0;
  return gap > 0 ? 1 : -1;
}

double mahalanobis_squared(const GaussianFullModel& model, int c,
                           std::span<const double> x) {
  const int d = model.num_features();
  Eigen::VectorXd diff(d);
  for (int j = 0; j < d; ++j) diff(j) = x[j] - model.means(c, j);
  const Eigen::LLT<Eigen::MatrixXd> llt(model.covariances[c]);
  return llt.matrixL().solve(diff).squaredNorm();
}

bool lda_prefers_class1(const GaussianFullModel& model,
                        std::span<const double> x) {
  CheckBinary(model.num_classes());
  if (!model.shared_covariance) {
    throw InvalidArgument("Mahalanobis sign criterion requires LDA");
  }
  return mahalanobis_squared(model, 1, x) - mahalanobis_squared(model, 0, x) <
         0;
}

}  // namespace woe
