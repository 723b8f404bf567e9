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

#ifndef WOE_EXPLANATION_JSON_H_
#define WOE_EXPLANATION_JSON_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "woe/explainer.h"

namespace woe {

// {y_star, class_names, feature_names, instance, steps: [{kept, ruled_out,
//  prior_log_odds, total_woe, posterior_log_odds, clamped_likelihoods,
//  atom_order, atoms: [{name, indices, woe, salient}]}], units: "nats",
//  config}
nlohmann::ordered_json explanation_to_json(
    const Explanation& explanation,
    const std::optional<std::string>& partition_name = std::nullopt);

nlohmann::ordered_json config_to_json(const ExplainerConfig& config);
// Fields absent from `j` keep their value in `base`.
ExplainerConfig config_from_json(const nlohmann::json& j,
                                 ExplainerConfig base = {});

// The published JSON Schema (draft-07) for explanation payloads.
const nlohmann::json& explanation_schema();

// Checks a payload against the schema's structure plus the semantic
// invariants the schema cannot express (nested chain ending at y_star, atom
// WoE summing to the step total, salience consistent with tau). Returns one
// message per violation; empty means valid.
std::vector<std::string> validate_explanation_json(const nlohmann::json& j);

}  // namespace woe

#endif  // WOE_EXPLANATION_JSON_H_
