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

#include "woe/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "woe/error.h"

namespace woe {
namespace {

void CheckLengths(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("length mismatch: " + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()));
  }
}

// `sign` selects the side; gains and scores are multiplied by it so that the
// negative side is handled as positive values.
std::optional<double> SideNdcg(std::span<const double> truth,
                               std::span<const double> estimate, double sign) {
  std::vector<size_t> members;
  for (size_t i = 0; i < truth.size(); ++i) {
    if (sign * truth[i] > 0) members.push_back(i);
  }
  if (members.empty()) return std::nullopt;

  auto dcg = [&](std::vector<size_t> order, std::span<const double> score) {
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return sign * score[a] > sign * score[b];
    });
    double sum = 0.0;
    for (size_t r = 0; r < order.size(); ++r) {
      sum += sign * truth[order[r]] / std::log2(static_cast<double>(r) + 2.0);
    }
    return sum;
  };
  return dcg(members, estimate) / dcg(members, truth);
}

}  // namespace

double mse(std::span<const double> truth, std::span<const double> estimate) {
  CheckLengths(truth, estimate);
  if (truth.empty()) throw InvalidArgument("mse of empty vectors");
  double sum = 0.0;
  for (size_t i = 0; i < truth.size(); ++i) {
    const double diff = truth[i] - estimate[i];
    sum += diff * diff;
  }
  return sum / static_cast<double>(truth.size());
}

NdcgResult signed_ndcg(std::span<const double> truth,
                       std::span<const double> estimate) {
  CheckLengths(truth, estimate);
  const std::optional<double> pos = SideNdcg(truth, estimate, 1.0);
  const std::optional<double> neg = SideNdcg(truth, estimate, -1.0);
  if (pos && neg) return {0.5 * (*pos + *neg), false};
  if (pos) return {*pos, false};
  if (neg) return {*neg, false};
  return {1.0, true};
}

}  // namespace woe
