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

#include <atomic>
#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"
#include "woe/error.h"
#include "woe/metrics.h"
#include "woe/surrogate.h"
#include "woe/woe.h"

namespace woe {
namespace {

using ::testing::HasSubstr;

// Draws n rows from the GNB's own generative distribution.
RowMatrix SampleGnb(const GaussianNBModel& m, int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Eigen::VectorXd priors = m.log_priors.array().exp();
  std::discrete_distribution<int> cls(priors.data(),
                                      priors.data() + priors.size());
  std::normal_distribution<double> z(0, 1);
  RowMatrix out(n, m.num_features());
  for (int i = 0; i < n; ++i) {
    const int c = cls(rng);
    for (int j = 0; j < m.num_features(); ++j) {
      out(i, j) = m.means(c, j) + std::sqrt(m.variances(c, j)) * z(rng);
    }
  }
  return out;
}

// Wraps `inner` as a black box and counts predict calls.
struct CountingBox {
  std::shared_ptr<std::atomic<int>> calls =
      std::make_shared<std::atomic<int>>(0);
  ModelHandle handle;

  explicit CountingBox(const ModelHandle& inner)
      : handle(Wrap(inner, calls)) {}

  static ModelHandle Wrap(const ModelHandle& inner,
                          std::shared_ptr<std::atomic<int>> calls) {
    BlackBoxModel box = as_black_box(inner, "counted");
    auto predict = box.predict;
    box.predict = [predict, calls](std::span<const double> x) {
      ++*calls;
      return predict(x);
    };
    return ModelHandle(box, inner.class_names(), inner.feature_names());
  }
};

ModelHandle SeparatedGnb(int k, int d, uint64_t seed) {
  std::mt19937_64 rng(seed);
  return testing::RandomGnb(k, d, rng);
}

TEST(Surrogate, ConstantPredictorIsRejected) {
  BlackBoxModel box;
  box.id = "constant";
  box.num_classes = 2;
  box.num_features = 1;
  box.predict = [](std::span<const double>) { return 1; };
  const ModelHandle h(box, {"a", "b"}, {"x"});
  RowMatrix bg(10, 1);
  bg.setRandom();
  try {
    fit_surrogate(h, bg);
    FAIL() << "expected an error";
  } catch (const InvalidArgument& e) {
    EXPECT_THAT(e.what(), HasSubstr("single predicted class"));
  }
}

TEST(Surrogate, RarelyPredictedClassIsDroppedWithWarning) {
  BlackBoxModel box;
  box.id = "rare";
  box.num_classes = 3;
  box.num_features = 1;
  box.predict = [](std::span<const double> x) {
    return x[0] > 0.95 ? 2 : (x[0] > 0 ? 1 : 0);
  };
  const ModelHandle h(box, {"a", "b", "c"}, {"x"});
  RowMatrix bg(20, 1);
  for (int i = 0; i < 20; ++i) bg(i, 0) = -1 + 0.1 * i;  // one row above 0.95
  const SurrogateModel s = fit_surrogate(h, bg);
  EXPECT_EQ(s.class_ids, (std::vector<int>{0, 1}));
  ASSERT_EQ(s.warnings.size(), 1u);
  EXPECT_THAT(s.warnings[0], HasSubstr("'c'"));
  const std::vector<double> x = {2.0};
  EXPECT_THROW(explain_black_box(h, s, x, FeaturePartition::Whole(1), {}),
               NotFound);
}

TEST(Surrogate, FitQueriesOncePerRowAndExplanationsNeverRefit) {
  const ModelHandle truth = SeparatedGnb(3, 4, 1);
  CountingBox box(truth);
  const RowMatrix bg = SampleGnb(*truth.get_if<GaussianNBModel>(), 500, 2);
  const SurrogateModel s = fit_surrogate(box.handle, bg);
  EXPECT_EQ(box.calls->load(), 500);
  EXPECT_EQ(s.n_fit, 500);

  const auto p = FeaturePartition::Singletons(truth.feature_names());
  std::mt19937_64 rng(3);
  box.calls->store(0);
  for (int i = 0; i < 100; ++i) {
    const auto x = testing::RandomVector(4, rng);
    explain_black_box(box.handle, s, x, p, {});
  }
  EXPECT_EQ(box.calls->load(), 100);
}

TEST(Surrogate, DeterministicForSameBackground) {
  const ModelHandle truth = SeparatedGnb(3, 3, 4);
  const ModelHandle box(as_black_box(truth, "b"), truth.class_names(),
                        truth.feature_names());
  const RowMatrix bg = SampleGnb(*truth.get_if<GaussianNBModel>(), 300, 5);
  const SurrogateModel a = fit_surrogate(box, bg);
  const SurrogateModel b = fit_surrogate(box, bg);
  EXPECT_EQ(surrogate_to_json(a, truth.class_names()),
            surrogate_to_json(b, truth.class_names()));
}

TEST(Surrogate, JsonRoundTrip) {
  const ModelHandle truth = SeparatedGnb(3, 2, 6);
  const ModelHandle box(as_black_box(truth, "b"), truth.class_names(),
                        truth.feature_names());
  const SurrogateModel s =
      fit_surrogate(box, SampleGnb(*truth.get_if<GaussianNBModel>(), 200, 7));
  const SurrogateModel back =
      surrogate_from_json(surrogate_to_json(s, truth.class_names()));
  EXPECT_EQ(back.class_ids, s.class_ids);
  EXPECT_EQ(back.class_names, s.class_names);
  EXPECT_EQ(back.n_fit, s.n_fit);
  EXPECT_EQ(back.source, "b");
  EXPECT_TRUE(back.inner.means == s.inner.means);
  EXPECT_TRUE(back.inner.variances == s.inner.variances);
}

TEST(Surrogate, BinaryBlackBoxGivesOneStep) {
  const ModelHandle truth = SeparatedGnb(2, 3, 8);
  const ModelHandle box(as_black_box(truth, "b"), truth.class_names(),
                        truth.feature_names());
  const SurrogateModel s =
      fit_surrogate(box, SampleGnb(*truth.get_if<GaussianNBModel>(), 300, 9));
  const std::vector<double> x = {0.1, 0.2, 0.3};
  const Explanation e = explain_black_box(
      box, s, x, FeaturePartition::Singletons(truth.feature_names()), {});
  ASSERT_EQ(e.steps.size(), 1u);
  EXPECT_EQ(s.class_ids[e.predicted_class], predict(truth, x));
}

TEST(Surrogate, PerFeatureWoeConvergesWithFitSize) {
  const ModelHandle truth = SeparatedGnb(2, 10, 10);
  const auto& gnb = *truth.get_if<GaussianNBModel>();
  const ModelHandle box(as_black_box(truth, "b"), truth.class_names(),
                        truth.feature_names());
  const RowMatrix pool = SampleGnb(gnb, 10000, 11);
  const RowMatrix test = SampleGnb(gnb, 20, 12);
  std::vector<double> errors;
  for (int n : {100, 1000, 10000}) {
    const SurrogateModel s = fit_surrogate(box, pool.topRows(n));
    double total = 0;
    for (int i = 0; i < test.rows(); ++i) {
      const std::span<const double> x(test.row(i).data(), 10);
      const int y = predict(truth, x);
      const int sign = y == 1 ? 1 : -1;
      std::vector<double> t(10), e(10);
      for (int j = 0; j < 10; ++j) {
        t[j] = sign * gnb_feature_woe(gnb, x, j);
        e[j] = sign * gnb_feature_woe(s.inner, x, j);
      }
      total += mse(t, e);
    }
    errors.push_back(total / test.rows());
  }
  EXPECT_GT(errors[0], errors[1]);
  EXPECT_GT(errors[1], errors[2]);
  EXPECT_LT(errors[2], 0.5);
}

// The surrogate is fit to predicted labels, so it converges to the GNB of
// the argmax-truncated class regions rather than to the truth. One-shot WoE
// still approaches the native values as N_fit grows and keeps their signs
// on large atoms.
TEST(Surrogate, OneShotWoeApproachesNativeForLargeFits) {
  const ModelHandle truth = SeparatedGnb(4, 3, 13);
  const auto& gnb = *truth.get_if<GaussianNBModel>();
  const ModelHandle box(as_black_box(truth, "b"), truth.class_names(),
                        truth.feature_names());
  const auto p = FeaturePartition::Singletons(truth.feature_names());
  const RowMatrix pool = SampleGnb(gnb, 10000, 14);
  const RowMatrix test = SampleGnb(gnb, 20, 15);
  ExplainerConfig cfg;
  cfg.mode = ExplainMode::kOneShot;
  std::vector<double> gaps;
  int large = 0, same_sign = 0;
  for (int n : {100, 1000, 10000}) {
    const SurrogateModel s = fit_surrogate(box, pool.topRows(n));
    double gap = 0;
    large = same_sign = 0;
    for (int i = 0; i < test.rows(); ++i) {
      const std::span<const double> x(test.row(i).data(), 3);
      const Explanation native = explain(truth, x, p, cfg);
      const Explanation surrogate = explain_black_box(box, s, x, p, cfg);
      ASSERT_EQ(native.predicted_class, surrogate.predicted_class);
      for (int a = 0; a < 3; ++a) {
        const double w = native.steps[0].atom_woes[a];
        const double v = surrogate.steps[0].atom_woes[a];
        gap += std::abs(w - v);
        if (std::abs(w) >= 2.0) {
          ++large;
          same_sign += (w > 0) == (v > 0);
        }
      }
    }
    gaps.push_back(gap);
  }
  EXPECT_GT(gaps[0], gaps[2]);
  EXPECT_EQ(same_sign, large);
}

}  // namespace
}  // namespace woe
