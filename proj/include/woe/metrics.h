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

#ifndef WOE_METRICS_H_
#define WOE_METRICS_H_

#include <span>

namespace woe {

// Mean of squared componentwise differences.
double mse(std::span<const double> truth, std::span<const double> estimate);

struct NdcgResult {
  double value = 1.0;
  // Set when the truth has no nonzero entry; value is then defined as 1.
  bool degenerate = false;
};

// NDCG computed separately on features with positive and with negative true
// WoE (gains = |true WoE|, log2(rank + 1) discounts, ranking by the estimate
// within each side), then averaged. A side without members is skipped.
NdcgResult signed_ndcg(std::span<const double> truth,
                       std::span<const double> estimate);

}  // namespace woe

#endif  // WOE_METRICS_H_
