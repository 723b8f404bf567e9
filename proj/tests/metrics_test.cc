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
#include <random>

#include "gtest/gtest.h"
#include "woe/error.h"
#include "woe/metrics.h"

namespace woe {
namespace {

TEST(Mse, Examples) {
  const std::vector<double> a = {1.5, -2, 3};
  EXPECT_EQ(mse(a, a), 0.0);
  EXPECT_DOUBLE_EQ(mse(std::vector<double>{1, -1}, std::vector<double>{0, 0}),
                   1.0);
  EXPECT_THROW(mse(a, std::vector<double>{1, 2}), InvalidArgument);
}

TEST(Mse, MatchesDirectSum) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(7), b(7);
    double sum = 0;
    for (int i = 0; i < 7; ++i) {
      a[i] = n(rng);
      b[i] = n(rng);
      sum += (a[i] - b[i]) * (a[i] - b[i]);
    }
    EXPECT_DOUBLE_EQ(mse(a, b), sum / 7);
  }
}

TEST(SignedNdcg, PerfectRankingIsOne) {
  const std::vector<double> t = {3, -1, 0.5, -4, 2};
  EXPECT_DOUBLE_EQ(signed_ndcg(t, t).value, 1.0);
  const std::vector<double> scaled = {30, -10, 5, -40, 20};
  EXPECT_DOUBLE_EQ(signed_ndcg(t, scaled).value, 1.0);
}

TEST(SignedNdcg, ReversedPair) {
  const std::vector<double> truth = {3, 1};
  const std::vector<double> est = {1, 3};
  const double expected = (1 + 3 / std::log2(3.0)) / (3 + 1 / std::log2(3.0));
  EXPECT_NEAR(signed_ndcg(truth, est).value, expected, 1e-15);
  EXPECT_NEAR(expected, 0.79671, 1e-5);
}

TEST(SignedNdcg, SingletonSidesAreTriviallyIdeal) {
  const std::vector<double> truth = {2, -2};
  const std::vector<double> est = {-1, 1};
  EXPECT_DOUBLE_EQ(signed_ndcg(truth, est).value, 1.0);
}

TEST(SignedNdcg, AllZeroTruthIsFlagged) {
  const std::vector<double> zero = {0, 0, 0};
  const NdcgResult r = signed_ndcg(zero, std::vector<double>{1, 2, 3});
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.value, 1.0);
}

TEST(SignedNdcg, OneSidedTruthUsesThatSide) {
  const std::vector<double> truth = {-3, -1, 0};
  const std::vector<double> est = {-1, -3, 5};
  const double expected = (1 + 3 / std::log2(3.0)) / (3 + 1 / std::log2(3.0));
  EXPECT_NEAR(signed_ndcg(truth, est).value, expected, 1e-15);
}

// DCG of one side via explicit ranks: rank of i is the number of members
// scored strictly higher.
double SideOracle(const std::vector<double>& truth,
                  const std::vector<double>& est, double sign) {
  std::vector<int> members;
  for (size_t i = 0; i < truth.size(); ++i) {
    if (sign * truth[i] > 0) members.push_back(static_cast<int>(i));
  }
  double dcg = 0, ideal = 0;
  for (int i : members) {
    int rank_est = 0, rank_true = 0;
    for (int j : members) {
      rank_est += sign * est[j] > sign * est[i];
      rank_true += sign * truth[j] > sign * truth[i];
    }
    dcg += sign * truth[i] / std::log2(rank_est + 2.0);
    ideal += sign * truth[i] / std::log2(rank_true + 2.0);
  }
  return dcg / ideal;
}

TEST(SignedNdcg, MatchesRankOracleAndStaysInUnitInterval) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> t(8), e(8);
    for (int i = 0; i < 8; ++i) {
      t[i] = n(rng);
      e[i] = t[i] + 2 * n(rng);
    }
    bool pos = false, neg = false;
    for (double v : t) (v > 0 ? pos : neg) = true;
    double expected;
    if (pos && neg) {
      expected = 0.5 * (SideOracle(t, e, 1) + SideOracle(t, e, -1));
    } else {
      expected = SideOracle(t, e, pos ? 1 : -1);
    }
    const double got = signed_ndcg(t, e).value;
    EXPECT_NEAR(got, expected, 1e-12);
    EXPECT_GE(got, 0.0);
    EXPECT_LE(got, 1.0 + 1e-15);
  }
}

}  // namespace
}  // namespace woe
