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

#include "woe/models.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "woe/error.h"

namespace woe {
namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;  // log(2 pi)

double ClampProbability(double p) {
  return std::clamp(p, kProbabilityFloor, 1.0 - kProbabilityFloor);
}

Eigen::VectorXd PriorsFromCounts(const std::vector<int>& counts, bool uniform) {
  const int k = static_cast<int>(counts.size());
  Eigen::VectorXd log_priors(k);
  double total = 0;
  for (int n : counts) total += n;
  for (int c = 0; c < k; ++c) {
    const double p = uniform ? 1.0 / k : counts[c] / total;
    log_priors(c) = std::log(ClampProbability(p));
  }
  return log_priors;
}

void CheckTwoPerClass(const Dataset& data) {
  const std::vector<int> counts = data.ClassCounts();
  for (int c = 0; c < data.num_classes(); ++c) {
    if (counts[c] < 2) {
      throw InvalidArgument("class '" + data.class_names()[c] + "' has " +
                            std::to_string(counts[c]) +
                            " sample(s); at least 2 are needed to fit a "
                            "variance");
    }
  }
}

void CheckLogPriors(const Eigen::VectorXd& log_priors, int k) {
  if (log_priors.size() != k) {
    throw InvalidArgument("log_priors has " +
                          std::to_string(log_priors.size()) + " entries, " +
                          "expected " + std::to_string(k));
  }
  if (!log_priors.allFinite()) throw InvalidArgument("non-finite log prior");
  const double mass = log_priors.array().exp().sum();
  if (std::abs(mass - 1.0) > 1e-9) {
    throw InvalidArgument("priors sum to " + std::to_string(mass));
  }
}

// log N(x_A; mu_A, Sigma_AA).
double MarginalGaussianLogDensity(const Eigen::MatrixXd& means, int c,
                                  const Eigen::MatrixXd& cov,
                                  std::span<const double> x,
                                  std::span<const int> indices) {
  const auto m = static_cast<Eigen::Index>(indices.size());
  if (m == 0) return 0.0;
  Eigen::VectorXd diff(m);
  Eigen::MatrixXd sub(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    diff(a) = x[indices[a]] - means(c, indices[a]);
    for (Eigen::Index b = 0; b < m; ++b) sub(a, b) = cov(indices[a], indices[b]);
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(sub);
  if (llt.info() != Eigen::Success) {
    throw InvalidArgument("covariance block is not positive definite");
  }
  const Eigen::VectorXd z = llt.matrixL().solve(diff);
  const double log_det =
      2.0 * llt.matrixLLT().diagonal().array().log().sum();
  return -0.5 * (static_cast<double>(m) * kLog2Pi + log_det + z.squaredNorm());
}

LogValue Floor(double v) {
  if (std::isfinite(v)) return {v, 0};
  if (v > 0) return {v, 0};  // +inf cannot happen for valid models
  return {kLogLikelihoodFloor, 1};
}

const BlackBoxModel* AsBlackBox(const ModelHandle& model) {
  return model.get_if<BlackBoxModel>();
}

void RequireNative(const ModelHandle& model) {
  if (!model.is_native()) {
    throw Unsupported("likelihood unavailable: model '" +
                      AsBlackBox(model)->id + "' is a black box");
  }
}

void CheckInstance(const ModelHandle& model, std::span<const double> x) {
  if (static_cast<int>(x.size()) != model.num_features()) {
    throw InvalidArgument("instance has " + std::to_string(x.size()) +
                          " values, model expects " +
                          std::to_string(model.num_features()));
  }
}

void CheckClassSet(const ModelHandle& model, const ClassSet& classes) {
  if (classes.empty()) throw InvalidArgument("empty class set");
  if (classes.members().back() >= model.num_classes()) {
    throw InvalidArgument("class set " + classes.ToString() +
                          " references a class outside [0, " +
                          std::to_string(model.num_classes()) + ")");
  }
}

LogValue MixtureLogLikelihood(std::span<const double> class_ll,
                              std::span<const int> clamped,
                              const Eigen::VectorXd& log_priors,
                              const ClassSet& classes) {
  std::vector<double> joint;
  std::vector<double> prior;
  int n_clamped = 0;
  for (int c : classes) {
    joint.push_back(class_ll[c] + log_priors(c));
    prior.push_back(log_priors(c));
    n_clamped += clamped[c];
  }
  return {log_sum_exp(joint) - log_sum_exp(prior), n_clamped};
}

}  // namespace

void GaussianNBModel::Validate() const {
  const int k = num_classes();
  if (k < 2) throw InvalidArgument("GNB needs at least 2 classes");
  if (variances.rows() != k || variances.cols() != means.cols()) {
    throw InvalidArgument("GNB means/variances shape mismatch");
  }
  if (!means.allFinite() || !variances.allFinite()) {
    throw InvalidArgument("GNB parameters must be finite");
  }
  if ((variances.array() <= 0).any()) {
    throw InvalidArgument("GNB variances must be positive");
  }
  CheckLogPriors(log_priors, k);
}

GaussianNBModel fit_gnb(const Dataset& data, const GnbOptions& options) {
  if (options.smoothing < 0) throw InvalidArgument("smoothing must be >= 0");
  CheckTwoPerClass(data);
  const int k = data.num_classes();
  const int d = data.num_features();
  const auto& X = data.features();

  GaussianNBModel model;
  model.means = Eigen::MatrixXd::Zero(k, d);
  model.variances = Eigen::MatrixXd::Zero(k, d);
  const std::vector<int> counts = data.ClassCounts();
  for (int i = 0; i < data.num_rows(); ++i) {
    model.means.row(data.label(i)) += X.row(i);
  }
  for (int c = 0; c < k; ++c) model.means.row(c) /= counts[c];
  for (int i = 0; i < data.num_rows(); ++i) {
    const int y = data.label(i);
    model.variances.row(y) +=
        (X.row(i) - model.means.row(y)).array().square().matrix();
  }
  for (int c = 0; c < k; ++c) model.variances.row(c) /= counts[c];

  const Eigen::RowVectorXd pooled_mean = X.colwise().mean();
  const Eigen::RowVectorXd pooled_var =
      (X.rowwise() - pooled_mean).array().square().colwise().mean();
  const double max_var = d > 0 ? pooled_var.maxCoeff() : 0.0;
  model.smoothing = options.smoothing;
  model.epsilon = options.smoothing * max_var;
  model.variances.array() += model.epsilon;
  if ((model.variances.array() <= 0).any()) {
    throw InvalidArgument(
        "zero variance after smoothing (all features constant or smoothing "
        "is 0)");
  }
  model.log_priors = PriorsFromCounts(counts, options.uniform_priors);
  return model;
}

void LogisticModel::Validate() const {
  if (!weights.allFinite() || !std::isfinite(bias)) {
    throw InvalidArgument("logistic parameters must be finite");
  }
  CheckLogPriors(log_priors, 2);
}

LogisticModel fit_logistic(const Dataset& data,
                           const LogisticOptions& options) {
  if (data.num_classes() != 2) {
    throw InvalidArgument("logistic regression is binary; data has " +
                          std::to_string(data.num_classes()) + " classes");
  }
  const std::vector<int> counts = data.ClassCounts();
  if (counts[0] == 0 || counts[1] == 0) {
    throw InvalidArgument("logistic regression needs both classes present");
  }
  const int n = data.num_rows();
  const int d = data.num_features();
  // Gradient ascent runs on standardized features; the coefficients are
  // mapped back at the end.
  const Eigen::RowVectorXd center = data.features().colwise().mean();
  Eigen::RowVectorXd scale =
      ((data.features().rowwise() - center).array().square().colwise().mean())
          .sqrt();
  for (int j = 0; j < d; ++j) {
    if (scale(j) <= 0) scale(j) = 1.0;
  }
  const Eigen::MatrixXd Z =
      (data.features().rowwise() - center).array().rowwise() / scale.array();
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = data.label(i);

  Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
  double b = 0.0;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const Eigen::VectorXd z = (Z * w).array() + b;
    const Eigen::VectorXd p = (1.0 + (-z.array()).exp()).inverse().matrix();
    const Eigen::VectorXd r = y - p;
    const Eigen::VectorXd grad_w = Z.transpose() * r / n - options.l2 * w;
    const double grad_b = r.mean();
    w += options.learning_rate * grad_w;
    b += options.learning_rate * grad_b;
    if (std::sqrt(grad_w.squaredNorm() + grad_b * grad_b) < options.tolerance) {
      break;
    }
  }

  LogisticModel model;
  model.weights = (w.array() / scale.transpose().array()).matrix();
  model.bias = b - center.dot(model.weights);
  model.log_priors = PriorsFromCounts(counts, false);
  model.Validate();
  return model;
}

void GaussianFullModel::Validate() const {
  const int k = num_classes();
  const int d = num_features();
  if (k < 2) throw InvalidArgument("Gaussian model needs at least 2 classes");
  if (static_cast<int>(covariances.size()) != k) {
    throw InvalidArgument("expected one covariance per class");
  }
  for (int c = 0; c < k; ++c) {
    const auto& cov = covariances[c];
    if (cov.rows() != d || cov.cols() != d) {
      throw InvalidArgument("covariance shape mismatch for class " +
                            std::to_string(c));
    }
    if (!cov.allFinite() || !cov.isApprox(cov.transpose(), 1e-12)) {
      throw InvalidArgument("covariance of class " + std::to_string(c) +
                            " is not symmetric");
    }
    if (Eigen::LLT<Eigen::MatrixXd>(cov).info() != Eigen::Success) {
      throw InvalidArgument("covariance of class " + std::to_string(c) +
                            " is not positive definite");
    }
    if (shared_covariance && cov != covariances[0]) {
      throw InvalidArgument("LDA covariances must be identical");
    }
  }
  CheckLogPriors(log_priors, k);
}

GaussianFullModel fit_gaussian_full(const Dataset& data,
                                    const GaussianFullOptions& options) {
  if (options.ridge < 0) throw InvalidArgument("ridge must be >= 0");
  CheckTwoPerClass(data);
  const int k = data.num_classes();
  const int d = data.num_features();
  const auto& X = data.features();
  const std::vector<int> counts = data.ClassCounts();

  GaussianFullModel model;
  model.shared_covariance = options.shared_covariance;
  model.ridge = options.ridge;
  model.means = Eigen::MatrixXd::Zero(k, d);
  for (int i = 0; i < data.num_rows(); ++i) {
    model.means.row(data.label(i)) += X.row(i);
  }
  for (int c = 0; c < k; ++c) model.means.row(c) /= counts[c];

  std::vector<Eigen::MatrixXd> scatter(k, Eigen::MatrixXd::Zero(d, d));
  for (int i = 0; i < data.num_rows(); ++i) {
    const int y = data.label(i);
    const Eigen::VectorXd diff = (X.row(i) - model.means.row(y)).transpose();
    scatter[y].noalias() += diff * diff.transpose();
  }
  auto regularize = [&](Eigen::MatrixXd cov) {
    const double bump = options.ridge * cov.trace() / d;
    cov.diagonal().array() += bump;
    return cov;
  };
  if (options.shared_covariance) {
    Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(d, d);
    for (const auto& s : scatter) pooled += s;
    pooled /= data.num_rows();
    model.covariances.assign(k, regularize(pooled));
  } else {
    for (int c = 0; c < k; ++c) {
      model.covariances.push_back(regularize(scatter[c] / counts[c]));
    }
  }
  model.log_priors = PriorsFromCounts(counts, options.uniform_priors);
  model.Validate();
  return model;
}

ConditionalNormal conditional_gaussian(const GaussianFullModel& model, int c,
                                       int target,
                                       std::span<const double> given) {
  const int d = model.num_features();
  if (c < 0 || c >= model.num_classes()) {
    throw InvalidArgument("class index out of range");
  }
  if (target < 0 || target >= d) {
    throw InvalidArgument("target feature index out of range");
  }
  if (static_cast<int>(given.size()) != target) {
    throw InvalidArgument("conditioning on features 0.." +
                          std::to_string(target - 1) + " needs " +
                          std::to_string(target) + " values, got " +
                          std::to_string(given.size()));
  }
  const Eigen::MatrixXd& cov = model.covariances[c];
  const double mu = model.means(c, target);
  if (target == 0) return {mu, cov(0, 0)};

  const Eigen::MatrixXd block = cov.topLeftCorner(target, target);
  const Eigen::VectorXd cross = cov.col(target).head(target);
  Eigen::VectorXd diff(target);
  for (int j = 0; j < target; ++j) diff(j) = given[j] - model.means(c, j);

  const Eigen::LLT<Eigen::MatrixXd> llt(block);
  if (llt.info() != Eigen::Success) {
    throw InvalidArgument("singular conditioning block for class " +
                          std::to_string(c));
  }
  const Eigen::VectorXd solved = llt.solve(cross);
  ConditionalNormal out;
  out.mean = mu + solved.dot(diff);
  out.variance = cov(target, target) - cross.dot(solved);
  if (!(out.variance > 0)) {
    throw InvalidArgument("non-positive conditional variance");
  }
  return out;
}

ModelHandle::ModelHandle(Params params, std::vector<std::string> class_names,
                         std::vector<std::string> feature_names)
    : params_(std::move(params)),
      class_names_(std::move(class_names)),
      feature_names_(std::move(feature_names)) {
  int k = 0;
  int d = 0;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LogisticModel>) {
          p.Validate();
          k = 2;
          d = p.num_features();
        } else if constexpr (std::is_same_v<T, BlackBoxModel>) {
          if (!p.predict) throw InvalidArgument("black box without predict");
          k = p.num_classes;
          d = p.num_features;
        } else {
          p.Validate();
          k = p.num_classes();
          d = p.num_features();
        }
      },
      params_);
  if (static_cast<int>(class_names_.size()) != k) {
    throw InvalidArgument("model has " + std::to_string(k) +
                          " classes but " +
                          std::to_string(class_names_.size()) + " class names");
  }
  if (static_cast<int>(feature_names_.size()) != d) {
    throw InvalidArgument("model has " + std::to_string(d) +
                          " features but " +
                          std::to_string(feature_names_.size()) +
                          " feature names");
  }
}

std::string ModelHandle::type_name() const {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GaussianNBModel>) {
          return "gnb";
        } else if constexpr (std::is_same_v<T, LogisticModel>) {
          return "logistic";
        } else if constexpr (std::is_same_v<T, GaussianFullModel>) {
          return p.shared_covariance ? "lda" : "qda";
        } else {
          return "black_box";
        }
      },
      params_);
}

ModelHandle make_handle(ModelHandle::Params params, const Dataset& data) {
  return ModelHandle(std::move(params), data.class_names(),
                     data.feature_names());
}

BlackBoxModel as_black_box(const ModelHandle& model, std::string id) {
  RequireNative(model);
  auto shared = std::make_shared<const ModelHandle>(model);
  BlackBoxModel box;
  box.id = std::move(id);
  box.num_classes = model.num_classes();
  box.num_features = model.num_features();
  box.predict = [shared](std::span<const double> x) {
    return predict(*shared, x);
  };
  box.predict_proba = [shared](std::span<const double> x) {
    const Eigen::VectorXd lp = posterior_log_probabilities(*shared, x);
    std::vector<double> p(lp.size());
    for (Eigen::Index c = 0; c < lp.size(); ++c) p[c] = std::exp(lp(c));
    return p;
  };
  box.thread_safe = true;
  return box;
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double hi = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(hi)) return hi;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - hi);
  return hi + std::log(sum);
}

Eigen::VectorXd log_priors(const ModelHandle& model) {
  RequireNative(model);
  return std::visit(
      [](const auto& p) -> Eigen::VectorXd {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>,
                                     BlackBoxModel>) {
          return {};
        } else {
          return p.log_priors;
        }
      },
      model.params());
}

LogValue class_log_likelihood(const ModelHandle& model, int c,
                              std::span<const double> x,
                              std::span<const int> indices) {
  RequireNative(model);
  CheckInstance(model, x);
  if (c < 0 || c >= model.num_classes()) {
    throw InvalidArgument("class index " + std::to_string(c) +
                          " out of range");
  }
  for (int j : indices) {
    if (j < 0 || j >= model.num_features()) {
      throw InvalidArgument("feature index " + std::to_string(j) +
                            " out of range");
    }
  }
  if (const auto* gnb = model.get_if<GaussianNBModel>()) {
    double sum = 0.0;
    for (int j : indices) {
      const double var = gnb->variances(c, j);
      const double diff = x[j] - gnb->means(c, j);
      sum += -0.5 * (kLog2Pi + std::log(var) + diff * diff / var);
    }
    return Floor(sum);
  }
  if (const auto* full = model.get_if<GaussianFullModel>()) {
    return Floor(MarginalGaussianLogDensity(full->means, c,
                                            full->covariances[c], x, indices));
  }
  // Logistic regression has no class-conditional density. The quantity
  // returned is relative to class 0: per-feature terms w_j x_j on proper
  // subsets (the additive identification), and the exact posterior-minus-
  // prior log odds on the full feature set.
  const auto& lr = *model.get_if<LogisticModel>();
  if (c == 0) return {0.0, 0};
  if (static_cast<int>(indices.size()) == lr.num_features()) {
    double z = lr.bias;
    for (int j = 0; j < lr.num_features(); ++j) z += lr.weights(j) * x[j];
    return Floor(z - (lr.log_priors(1) - lr.log_priors(0)));
  }
  double sum = 0.0;
  for (int j : indices) sum += lr.weights(j) * x[j];
  return Floor(sum);
}

LogValue class_set_log_likelihood(const ModelHandle& model,
                                  std::span<const double> x,
                                  std::span<const int> indices,
                                  const ClassSet& classes) {
  RequireNative(model);
  return LikelihoodEvaluator(model, x).class_set_log_likelihood(indices,
                                                                classes);
}

Eigen::VectorXd posterior_log_probabilities(const ModelHandle& model,
                                            std::span<const double> x) {
  CheckInstance(model, x);
  const int k = model.num_classes();
  if (const auto* box = AsBlackBox(model)) {
    if (!box->predict_proba) {
      throw Unsupported("black box '" + box->id +
                        "' does not expose probabilities");
    }
    const std::vector<double> p = box->predict_proba(x);
    if (static_cast<int>(p.size()) != k) {
      throw InvalidArgument("black box returned wrong probability count");
    }
    Eigen::VectorXd out(k);
    for (int c = 0; c < k; ++c) out(c) = std::log(ClampProbability(p[c]));
    return out;
  }
  const LikelihoodEvaluator eval(model, x);
  std::vector<double> joint(k);
  for (int c = 0; c < k; ++c) {
    joint[c] = eval.full_class_set_log_likelihood(ClassSet{c}).value +
               eval.log_priors()(c);
  }
  const double norm = log_sum_exp(joint);
  Eigen::VectorXd out(k);
  for (int c = 0; c < k; ++c) out(c) = joint[c] - norm;
  return out;
}

double posterior_log_odds(const ModelHandle& model, std::span<const double> x,
                          const ClassSet& hypothesis,
                          const ClassSet& alternative) {
  CheckClassSet(model, hypothesis);
  CheckClassSet(model, alternative);
  if (hypothesis.intersects(alternative)) {
    throw InvalidArgument("hypothesis and alternative overlap");
  }
  const Eigen::VectorXd lp = posterior_log_probabilities(model, x);
  std::vector<double> num;
  std::vector<double> den;
  for (int c : hypothesis) num.push_back(lp(c));
  for (int c : alternative) den.push_back(lp(c));
  return log_sum_exp(num) - log_sum_exp(den);
}

int predict(const ModelHandle& model, std::span<const double> x) {
  CheckInstance(model, x);
  if (const auto* box = AsBlackBox(model)) return box->predict(x);
  const Eigen::VectorXd lp = posterior_log_probabilities(model, x);
  Eigen::Index best = 0;
  lp.maxCoeff(&best);
  return static_cast<int>(best);
}

LikelihoodEvaluator::LikelihoodEvaluator(const ModelHandle& model,
                                         std::span<const double> x)
    : model_(&model), x_(x) {
  RequireNative(model);
  CheckInstance(model, x);
  log_priors_ = woe::log_priors(model);
  const int k = model.num_classes();
  const int d = model.num_features();
  if (const auto* gnb = model.get_if<GaussianNBModel>()) {
    gnb_table_.resize(k, d);
    for (int c = 0; c < k; ++c) {
      for (int j = 0; j < d; ++j) {
        const double var = gnb->variances(c, j);
        const double diff = x[j] - gnb->means(c, j);
        gnb_table_(c, j) = -0.5 * (kLog2Pi + std::log(var) + diff * diff / var);
      }
    }
  }
  std::vector<int> all(d);
  for (int j = 0; j < d; ++j) all[j] = j;
  full_log_likelihood_.resize(k);
  for (int c = 0; c < k; ++c) {
    const LogValue v = class_log_likelihood(c, all);
    full_log_likelihood_[c] = v.value;
    full_clamped_ += v.clamped;
  }
}

LogValue LikelihoodEvaluator::class_log_likelihood(
    int c, std::span<const int> indices) const {
  if (gnb_table_.size() > 0) {
    double sum = 0.0;
    for (int j : indices) sum += gnb_table_(c, j);
    return Floor(sum);
  }
  return woe::class_log_likelihood(*model_, c, x_, indices);
}

LogValue LikelihoodEvaluator::class_set_log_likelihood(
    std::span<const int> indices, const ClassSet& classes) const {
  CheckClassSet(*model_, classes);
  if (model_->get_if<LogisticModel>() && classes.size() > 1) {
    throw Unsupported(
        "logistic regression has no class-conditional density; composite "
        "class sets are not supported");
  }
  if (indices.empty()) return {0.0, 0};
  const int k = model_->num_classes();
  std::vector<double> ll(k, 0.0);
  std::vector<int> clamped(k, 0);
  for (int c : classes) {
    const LogValue v = class_log_likelihood(c, indices);
    ll[c] = v.value;
    clamped[c] = v.clamped;
  }
  return MixtureLogLikelihood(ll, clamped, log_priors_, classes);
}

LogValue LikelihoodEvaluator::full_class_set_log_likelihood(
    const ClassSet& classes) const {
  CheckClassSet(*model_, classes);
  if (model_->get_if<LogisticModel>() && classes.size() > 1) {
    throw Unsupported(
        "logistic regression has no class-conditional density; composite "
        "class sets are not supported");
  }
  std::vector<int> clamped(full_log_likelihood_.size(), 0);
  if (full_clamped_ > 0) {
    for (size_t c = 0; c < clamped.size(); ++c) {
      clamped[c] = full_log_likelihood_[c] == kLogLikelihoodFloor ? 1 : 0;
    }
  }
  return MixtureLogLikelihood(full_log_likelihood_, clamped, log_priors_,
                              classes);
}

double LikelihoodEvaluator::log_prior_mass(const ClassSet& classes) const {
  CheckClassSet(*model_, classes);
  std::vector<double> lp;
  for (int c : classes) lp.push_back(log_priors_(c));
  return log_sum_exp(lp);
}

}  // namespace woe
