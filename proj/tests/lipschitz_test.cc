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

#include <cmath>

#include "gtest/gtest.h"
#include "woe/error.h"
#include "woe/lipschitz.h"

namespace woe {
namespace {

ExplanationFn Diag21() {
  return [](std::span<const double> x) {
    return std::vector<double>{2 * x[0], x[1]};
  };
}

// Max ratio over a (2n+1)^2 grid on the ball's bounding square.
double GridOracle(const ExplanationFn& fn, std::span<const double> x0,
                  double radius, int n) {
  const std::vector<double> e0 = fn(x0);
  double best = 0;
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      const double dx = radius * i / n, dy = radius * j / n;
      const double dist = std::hypot(dx, dy);
      if (dist == 0 || dist > radius) continue;
      const std::vector<double> x = {x0[0] + dx, x0[1] + dy};
      const auto e = fn(x);
      best = std::max(best, std::hypot(e[0] - e0[0], e[1] - e0[1]) / dist);
    }
  }
  return best;
}

TEST(Lipschitz, ConstantFunctionIsZero) {
  const ExplanationFn fn = [](std::span<const double>) {
    return std::vector<double>{1.0, -2.0, 3.0};
  };
  const std::vector<double> x0 = {0.5, 0.5};
  const LipschitzEstimate e = lipschitz_estimate(fn, x0, {.radius = 0.5});
  EXPECT_EQ(e.value, 0.0);
  EXPECT_EQ(e.evaluations, 61);
}

TEST(Lipschitz, LinearMapAgainstGridOracle) {
  const std::vector<double> x0 = {0.3, -0.7};
  const double oracle = GridOracle(Diag21(), x0, 0.5, 50);
  EXPECT_NEAR(oracle, 2.0, 1e-12);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const LipschitzEstimate e = lipschitz_estimate(
        Diag21(), x0, {.radius = 0.5, .budget = 60, .seed = seed});
    EXPECT_GE(e.value, 0.95 * oracle) << "seed " << seed;
    EXPECT_LE(e.value, oracle + 1e-12) << "seed " << seed;
  }
}

TEST(Lipschitz, NeverExceedsGridOracleOnNonlinearMap) {
  const ExplanationFn fn = [](std::span<const double> x) {
    return std::vector<double>{std::sin(3 * x[0]) + x[1] * x[1], x[0] * x[1]};
  };
  const std::vector<double> x0 = {0.2, 0.1};
  const double oracle = GridOracle(fn, x0, 0.3, 200);
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const LipschitzEstimate e =
        lipschitz_estimate(fn, x0, {.radius = 0.3, .seed = seed});
    EXPECT_LE(e.value, oracle * (1 + 1e-3));
    EXPECT_GT(e.value, 0.8 * oracle);
  }
}

TEST(Lipschitz, MonotoneInBudgetForNestedSamples) {
  const ExplanationFn fn = [](std::span<const double> x) {
    return std::vector<double>{std::tanh(4 * x[0]) * x[2], std::cos(x[1])};
  };
  const std::vector<double> x0 = {0.1, 0.2, 0.3};
  double previous = 0;
  for (int budget : {2, 5, 10, 20, 40, 80, 160}) {
    const double v =
        lipschitz_estimate(fn, x0, {.radius = 1, .budget = budget,
                                    .refine_steps = 0, .seed = 3})
            .value;
    EXPECT_GE(v, previous) << "budget " << budget;
    previous = v;
  }
  // Refinement only adds probes on top of the same global samples.
  const double global_only =
      lipschitz_estimate(fn, x0, {.radius = 1, .budget = 50,
                                  .refine_steps = 0, .seed = 3})
          .value;
  const double refined =
      lipschitz_estimate(fn, x0, {.radius = 1, .budget = 60,
                                  .refine_steps = 10, .seed = 3})
          .value;
  EXPECT_GE(refined, global_only);
}

TEST(Lipschitz, ArgmaxStaysInBall) {
  const std::vector<double> x0 = {1, 2};
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const LipschitzEstimate e = lipschitz_estimate(
        Diag21(), x0, {.radius = 0.25, .refine_steps = 30, .seed = seed});
    EXPECT_LE(std::hypot(e.argmax[0] - 1, e.argmax[1] - 2), 0.25 + 1e-9);
  }
}

TEST(Lipschitz, FailedProbesAreSkipped) {
  int calls = 0;
  const ExplanationFn flaky = [&calls](std::span<const double> x) {
    if (calls++ % 2 == 1) throw Error("flaky");
    return std::vector<double>{x[0]};
  };
  const std::vector<double> x0 = {0};
  const LipschitzEstimate e =
      lipschitz_estimate(flaky, x0, {.radius = 1, .budget = 10, .refine_steps = 2});
  EXPECT_EQ(e.failed_probes, 5);
  EXPECT_NEAR(e.value, 1.0, 1e-12);

  const ExplanationFn broken = [x0](std::span<const double> x) {
    if (x[0] != x0[0]) throw Error("broken");
    return std::vector<double>{0};
  };
  EXPECT_THROW(lipschitz_estimate(broken, x0, {.budget = 5, .refine_steps = 1}),
               Error);
}

TEST(Lipschitz, OptionsAreValidated) {
  const std::vector<double> x0 = {0};
  EXPECT_THROW(lipschitz_estimate(Diag21(), x0, {.radius = 0}),
               InvalidArgument);
  EXPECT_THROW(lipschitz_estimate(Diag21(), x0, {.budget = 1}),
               InvalidArgument);
  EXPECT_THROW(lipschitz_estimate(Diag21(), x0, {.budget = 5, .refine_steps = 5}),
               InvalidArgument);
}

}  // namespace
}  // namespace woe
