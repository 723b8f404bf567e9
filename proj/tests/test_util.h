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

#ifndef WOE_TESTS_TEST_UTIL_H_
#define WOE_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "woe/explainer.h"
#include "woe/models.h"

namespace woe::testing {

inline double NormalPdf(double x, double mean, double var) {
  return std::exp(-0.5 * (x - mean) * (x - mean) / var) /
         std::sqrt(2 * std::numbers::pi * var);
}

inline std::vector<std::string> Names(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// 1-d GNB with unit variances.
inline ModelHandle Gnb1d(const std::vector<double>& means,
                         std::vector<double> priors = {}) {
  const int k = static_cast<int>(means.size());
  if (priors.empty()) priors.assign(k, 1.0 / k);
  GaussianNBModel m;
  m.means.resize(k, 1);
  m.variances = Eigen::MatrixXd::Ones(k, 1);
  m.log_priors.resize(k);
  for (int c = 0; c < k; ++c) {
    m.means(c, 0) = means[c];
    m.log_priors(c) = std::log(priors[c]);
  }
  return ModelHandle(m, Names("c", k), {"x"});
}

inline Eigen::VectorXd RandomLogPriors(int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.2, 1.0);
  Eigen::VectorXd p(k);
  for (int c = 0; c < k; ++c) p(c) = u(rng);
  p /= p.sum();
  return p.array().log();
}

inline ModelHandle RandomGnb(int k, int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.5);
  std::uniform_real_distribution<double> v(0.3, 2.5);
  GaussianNBModel m;
  m.means.resize(k, d);
  m.variances.resize(k, d);
  for (int c = 0; c < k; ++c) {
    for (int j = 0; j < d; ++j) {
      m.means(c, j) = n(rng);
      m.variances(c, j) = v(rng);
    }
  }
  m.log_priors = RandomLogPriors(k, rng);
  return ModelHandle(m, Names("c", k), Names("f", d));
}

inline Eigen::MatrixXd RandomSpd(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = n(rng);
  }
  return a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(d, d);
}

inline ModelHandle RandomGaussianFull(int k, int d, bool shared,
                                      std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  GaussianFullModel m;
  m.means.resize(k, d);
  for (int c = 0; c < k; ++c) {
    for (int j = 0; j < d; ++j) m.means(c, j) = n(rng);
  }
  const Eigen::MatrixXd common = RandomSpd(d, rng);
  for (int c = 0; c < k; ++c) {
    m.covariances.push_back(shared ? common : RandomSpd(d, rng));
  }
  m.log_priors = RandomLogPriors(k, rng);
  m.shared_covariance = shared;
  return ModelHandle(m, Names("c", k), Names("f", d));
}

inline std::vector<double> RandomVector(int d, std::mt19937_64& rng,
                                        double scale = 1.5) {
  std::normal_distribution<double> n(0.0, scale);
  std::vector<double> x(d);
  for (auto& v : x) v = n(rng);
  return x;
}

// Multivariate normal log density, computed from the explicit inverse.
inline double MvnLogPdf(const Eigen::VectorXd& x, const Eigen::VectorXd& mean,
                        const Eigen::MatrixXd& cov) {
  const Eigen::VectorXd diff = x - mean;
  const double quad = diff.dot(cov.inverse() * diff);
  return -0.5 * (x.size() * std::log(2 * std::numbers::pi) +
                 std::log(cov.determinant()) + quad);
}

// Conditional moments from the precision matrix of the leading block.
inline ConditionalNormal PrecisionOracle(const Eigen::VectorXd& mean,
                                         const Eigen::MatrixXd& cov,
                                         int target,
                                         const std::vector<double>& given) {
  const Eigen::MatrixXd precision =
      cov.topLeftCorner(target + 1, target + 1).inverse();
  const double ptt = precision(target, target);
  double shift = 0.0;
  for (int j = 0; j < target; ++j) {
    shift += precision(target, j) * (given[j] - mean(j));
  }
  return {mean(target) - shift / ptt, 1.0 / ptt};
}

// Direct enumeration of the selection objective from class densities.
inline ClassSet BruteForceSelect(const ModelHandle& m, std::span<const double> x,
                          const ClassSet& parent, int y_star,
                          const ExplainerConfig& cfg) {
  std::vector<int> all(m.num_features());
  std::iota(all.begin(), all.end(), 0);
  const Eigen::VectorXd lp = log_priors(m);
  auto set_ll = [&](const ClassSet& s) {
    double num = 0, den = 0;
    for (int c : s) {
      num += std::exp(lp(c) + class_log_likelihood(m, c, x, all).value);
      den += std::exp(lp(c));
    }
    return std::log(num / den);
  };
  auto mass = [&](const ClassSet& s) {
    double p = 0;
    for (int c : s) p += std::exp(lp(c));
    return p;
  };
  std::vector<int> others;
  for (int c : parent) {
    if (c != y_star) others.push_back(c);
  }
  ClassSet best;
  double best_obj = -INFINITY;
  for (int mask = 0; mask + 1 < (1 << others.size()); ++mask) {
    std::vector<int> members = {y_star};
    for (size_t i = 0; i < others.size(); ++i) {
      if (mask >> i & 1) members.push_back(others[i]);
    }
    const ClassSet u(members);
    const double obj =
        set_ll(u) - set_ll(parent.minus(u)) -
        cfg.reg_weight * regularizer(u.size(), parent.size(), cfg.reg_exponent);
    const double tol = 1e-9 * std::max(1.0, std::abs(obj));
    if (obj > best_obj + tol ||
        (std::abs(obj - best_obj) <= tol &&
         (mass(u) > mass(best) + 1e-15 ||
          (std::abs(mass(u) - mass(best)) <= 1e-15 && u < best)))) {
      best = u;
      best_obj = std::max(obj, best_obj);
    }
  }
  return best;
}

}  // namespace woe::testing

#endif  // WOE_TESTS_TEST_UTIL_H_
