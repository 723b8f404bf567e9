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

#ifndef WOE_LIPSCHITZ_H_
#define WOE_LIPSCHITZ_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace woe {

// Maps an input point to an explanation vector.
using ExplanationFn =
    std::function<std::vector<double>(std::span<const double>)>;

struct LipschitzOptions {
  double radius = 1.0;    // Euclidean ball radius around x0
  int budget = 60;        // probes, excluding the evaluation at x0
  int refine_steps = 10;  // of the budget, spent on local refinement
  uint64_t seed = 0;

  void Validate() const;
};

struct LipschitzEstimate {
  // max ||E(x) - E(x0)|| / ||x - x0|| over the probes; a lower bound on the
  // local Lipschitz constant.
  double value = 0.0;
  std::vector<double> argmax;  // x0 itself when no probe beat 0
  int evaluations = 0;         // including E(x0)
  int failed_probes = 0;
};

// Maximizes a ratio objective over the ball. Implementations must only
// report ratios they actually evaluated, so that estimates are lower bounds.
class BallMaximizer {
 public:
  virtual ~BallMaximizer() = default;
  virtual LipschitzEstimate Maximize(const ExplanationFn& fn,
                                     std::span<const double> x0,
                                     const LipschitzOptions& options) const = 0;
};

// Uniform samples in the ball followed by shrinking-radius perturbations
// around the incumbent.
class SampleRefineMaximizer : public BallMaximizer {
 public:
  LipschitzEstimate Maximize(const ExplanationFn& fn,
                             std::span<const double> x0,
                             const LipschitzOptions& options) const override;
};

LipschitzEstimate lipschitz_estimate(const ExplanationFn& fn,
                                     std::span<const double> x0,
                                     const LipschitzOptions& options);

}  // namespace woe

#endif  // WOE_LIPSCHITZ_H_
