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

#ifndef WOE_MODELS_H_
#define WOE_MODELS_H_

#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "woe/class_set.h"
#include "woe/dataset.h"

namespace woe {

// Probabilities entering a logarithm are clamped to
// [kProbabilityFloor, 1 - kProbabilityFloor].
inline constexpr double kProbabilityFloor = 1e-12;
// Log-likelihoods that come out non-finite are replaced by this value and
// counted, so that WoE stays defined far away from the data.
inline constexpr double kLogLikelihoodFloor = -1e6;

// Gaussian naive Bayes: per-class, per-feature normal densities.
struct GaussianNBModel {
  Eigen::MatrixXd means;       // k x d
  Eigen::MatrixXd variances;   // k x d, already smoothed
  Eigen::VectorXd log_priors;  // k
  double smoothing = 0.0;      // fraction of the largest pooled variance
  double epsilon = 0.0;        // absolute amount added to every variance

  int num_classes() const { return static_cast<int>(means.rows()); }
  int num_features() const { return static_cast<int>(means.cols()); }
  void Validate() const;
};

struct GnbOptions {
  double smoothing = 1e-9;
  // Use 1/k priors instead of the empirical class frequencies.
  bool uniform_priors = false;
};

GaussianNBModel fit_gnb(const Dataset& data, const GnbOptions& options = {});

// Binary logistic regression, P(y=1|x) = sigmoid(w.x + b). The priors are the
// training class frequencies; they are needed to strip the base rate out of
// the posterior log odds.
struct LogisticModel {
  Eigen::VectorXd weights;     // d
  double bias = 0.0;
  Eigen::VectorXd log_priors;  // 2

  int num_features() const { return static_cast<int>(weights.size()); }
  void Validate() const;
};

struct LogisticOptions {
  int max_iterations = 20000;
  double learning_rate = 0.5;
  // Stop when the gradient norm of the (standardized) objective drops below.
  double tolerance = 1e-8;
  double l2 = 1e-4;
};

LogisticModel fit_logistic(const Dataset& data,
                           const LogisticOptions& options = {});

// Full-covariance Gaussian class conditionals: QDA, or LDA when the
// covariance is shared by all classes.
struct GaussianFullModel {
  Eigen::MatrixXd means;                     // k x d
  std::vector<Eigen::MatrixXd> covariances;  // k matrices, d x d
  Eigen::VectorXd log_priors;                // k
  bool shared_covariance = false;            // LDA
  double ridge = 0.0;                        // relative ridge used at fit time

  int num_classes() const { return static_cast<int>(means.rows()); }
  int num_features() const { return static_cast<int>(means.cols()); }
  void Validate() const;
};

struct GaussianFullOptions {
  bool shared_covariance = false;
  // Adds ridge * trace(cov) / d to the diagonal.
  double ridge = 1e-6;
  bool uniform_priors = false;
};

GaussianFullModel fit_gaussian_full(const Dataset& data,
                                    const GaussianFullOptions& options = {});

struct ConditionalNormal {
  double mean = 0.0;
  double variance = 0.0;
};

// Distribution of feature `target` given features 0..target-1 (values in
// `given`, which must have exactly `target` entries) for class `c`.
ConditionalNormal conditional_gaussian(const GaussianFullModel& model, int c,
                                       int target,
                                       std::span<const double> given);

// An opaque predictor. Only predictions (and optionally probabilities) are
// available; every likelihood query on it fails.
struct BlackBoxModel {
  std::string id;
  int num_classes = 0;
  int num_features = 0;
  std::function<int(std::span<const double>)> predict;
  std::function<std::vector<double>(std::span<const double>)> predict_proba;
  // Whether predict may be called from several threads at once.
  bool thread_safe = false;
};

// A fitted model plus the names of its classes and features.
class ModelHandle {
 public:
  using Params = std::variant<GaussianNBModel, LogisticModel,
                              GaussianFullModel, BlackBoxModel>;

  ModelHandle(Params params, std::vector<std::string> class_names,
              std::vector<std::string> feature_names);

  const Params& params() const { return params_; }
  bool is_native() const {
    return !std::holds_alternative<BlackBoxModel>(params_);
  }
  // "gnb", "logistic", "lda", "qda" or "black_box".
  std::string type_name() const;

  int num_classes() const { return static_cast<int>(class_names_.size()); }
  int num_features() const { return static_cast<int>(feature_names_.size()); }
  const std::vector<std::string>& class_names() const { return class_names_; }
  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }

  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&params_);
  }

 private:
  Params params_;
  std::vector<std::string> class_names_;
  std::vector<std::string> feature_names_;
};

ModelHandle make_handle(ModelHandle::Params params, const Dataset& data);

// Wraps a native model as an opaque predictor (argmax posterior). Used to
// benchmark surrogate estimation against a model whose true WoE is known.
BlackBoxModel as_black_box(const ModelHandle& model, std::string id);

// A log-domain value together with the number of terms that had to be
// floored to compute it.
struct LogValue {
  double value = 0.0;
  int clamped = 0;
};

double log_sum_exp(std::span<const double> values);

// Log prior probabilities of a native model (length k).
Eigen::VectorXd log_priors(const ModelHandle& model);

// log P(X_A = x_A | y = c) for the feature subset `indices` of the full
// instance `x`. For logistic regression this is only defined up to a term
// shared by both classes; see woe.h.
LogValue class_log_likelihood(const ModelHandle& model, int c,
                              std::span<const double> x,
                              std::span<const int> indices);

// log P(X_A = x_A | y in U), the prior-weighted mixture over U.
LogValue class_set_log_likelihood(const ModelHandle& model,
                                  std::span<const double> x,
                                  std::span<const int> indices,
                                  const ClassSet& classes);

// log P(c | x) for every class.
Eigen::VectorXd posterior_log_probabilities(const ModelHandle& model,
                                            std::span<const double> x);

// log sum_{c in U} P(c|x) - log sum_{c in U'} P(c|x).
double posterior_log_odds(const ModelHandle& model, std::span<const double> x,
                          const ClassSet& hypothesis,
                          const ClassSet& alternative);

int predict(const ModelHandle& model, std::span<const double> x);

// Caches per-class quantities for a single instance so that many class-set
// and feature-subset queries can be answered without recomputing densities.
class LikelihoodEvaluator {
 public:
  LikelihoodEvaluator(const ModelHandle& model, std::span<const double> x);

  const ModelHandle& model() const { return *model_; }
  std::span<const double> instance() const { return x_; }
  const Eigen::VectorXd& log_priors() const { return log_priors_; }

  LogValue class_log_likelihood(int c, std::span<const int> indices) const;
  LogValue class_set_log_likelihood(std::span<const int> indices,
                                    const ClassSet& classes) const;
  // Over all features; cached.
  LogValue full_class_set_log_likelihood(const ClassSet& classes) const;
  double log_prior_mass(const ClassSet& classes) const;

 private:
  const ModelHandle* model_;
  std::span<const double> x_;
  Eigen::VectorXd log_priors_;
  Eigen::MatrixXd gnb_table_;  // k x d per-feature log densities (GNB only)
  std::vector<double> full_log_likelihood_;
  int full_clamped_ = 0;
};

}  // namespace woe

#endif  // WOE_MODELS_H_
