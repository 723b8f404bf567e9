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

#ifndef WOE_REPORT_IO_H_
#define WOE_REPORT_IO_H_

#include <string>

#include "json.hpp"
#include "woe/estimation_benchmark.h"
#include "woe/robustness_benchmark.h"

namespace woe {

// Long format: d,n_fit,seed,metric,value with metric in {mse, ndcg}.
std::string estimation_to_csv(const EstimationReport& report);
nlohmann::ordered_json estimation_to_json(const EstimationConfig& config,
                                          const EstimationReport& report);
// MSE and NDCG against N_fit, one line per dimension, side by side.
std::string estimation_to_svg(const EstimationReport& report);

// Long format: dataset,row,seed,metric,value with metric in
// {lipschitz, radius, evaluations, failed_probes}.
std::string robustness_to_csv(const RobustnessReport& report);
nlohmann::ordered_json robustness_to_json(const RobustnessConfig& config,
                                          const RobustnessReport& report);
std::string robustness_to_svg(const RobustnessReport& report);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace woe

#endif  // WOE_REPORT_IO_H_
