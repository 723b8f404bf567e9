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

#include "woe/lipschitz.h"

#include <cmath>
#include <random>
#include <string>

#include "woe/error.h"

namespace woe {
namespace {

double Distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Uniform point in the ball of radius `radius` centered at the origin.
std::vector<double> UniformInBall(size_t dim, double radius,
                                  std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> dir(dim);
  double norm = 0.0;
  while (norm == 0.0) {
    norm = 0.0;
    for (auto& v : dir) {
      v = normal(rng);
      norm += v * v;
    }
    norm = std::sqrt(norm);
  }
  const double r =
      radius * std::pow(unit(rng), 1.0 / static_cast<double>(dim));
  for (auto& v : dir) v *= r / norm;
  return dir;
}

}  // namespace

void LipschitzOptions::Validate() const {
  if (!(radius > 0)) throw InvalidArgument("radius must be > 0");
  if (budget < 2) throw InvalidArgument("budget must be >= 2");
  if (refine_steps < 0 || refine_steps >= budget) {
    throw InvalidArgument("refine_steps must be in [0, budget)");
  }
}

LipschitzEstimate SampleRefineMaximizer::Maximize(
    const ExplanationFn& fn, std::span<const double> x0,
    const LipschitzOptions& options) const {
  options.Validate();
  const std::vector<double> e0 = fn(x0);
  LipschitzEstimate out;
  out.evaluations = 1;
  out.argmax.assign(x0.begin(), x0.end());

  int successes = 0;
  auto probe = [&](const std::vector<double>& x) {
    const double dx = Distance(x, x0);
    if (dx == 0.0) return;
    ++out.evaluations;
    std::vector<double> e;
    try {
      e = fn(x);
    } catch (const std::exception&) {
      ++out.failed_probes;
      return;
    }
    if (e.size() != e0.size()) {
      ++out.failed_probes;
      return;
    }
    ++successes;
    const double ratio = Distance(e, e0) / dx;
    if (ratio > out.value) {
      out.value = ratio;
      out.argmax = x;
    }
  };

  // Separate streams keep the global samples identical across refine
  // settings, so larger budgets see a superset of points.
  std::mt19937_64 global_rng(options.seed);
  std::mt19937_64 local_rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  const size_t dim = x0.size();
  const int n_global = options.budget - options.refine_steps;
  for (int i = 0; i < n_global; ++i) {
    std::vector<double> x = UniformInBall(dim, options.radius, global_rng);
    for (size_t j = 0; j < dim; ++j) x[j] += x0[j];
    probe(x);
  }
  for (int r = 1; r <= options.refine_steps; ++r) {
    const double step = options.radius * std::pow(0.5, r);
    std::vector<double> x = UniformInBall(dim, step, local_rng);
    for (size_t j = 0; j < dim; ++j) x[j] += out.argmax[j];
    const double dist = Distance(x, x0);
    if (dist > options.radius) {
      for (size_t j = 0; j < dim; ++j) {
        x[j] = x0[j] + (x[j] - x0[j]) * (options.radius / dist);
      }
    }
    probe(x);
  }
  if (successes == 0) {
    throw Error("explanation function failed on all " +
                std::to_string(out.failed_probes) + " probes");
  }
  return out;
}

LipschitzEstimate lipschitz_estimate(const ExplanationFn& fn,
                                     std::span<const double> x0,
                                     const LipschitzOptions& options) {
  return SampleRefineMaximizer().Maximize(fn, x0, options);
}

}  // namespace woe
