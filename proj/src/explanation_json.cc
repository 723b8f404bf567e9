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

#include "woe/explanation_json.h"

#include <cmath>
#include <set>

#include "schema_data.h"
#include "woe/error.h"

namespace woe {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json config_to_json(const ExplainerConfig& config) {
  ordered_json j;
  j["reg_exponent"] = config.reg_exponent;
  j["reg_weight"] = config.reg_weight;
  j["tau"] = config.salience_threshold;
  j["subset_search"] = to_string(config.subset_search);
  j["exhaustive_limit"] = config.exhaustive_limit;
  j["atom_order_policy"] = to_string(config.atom_order_policy);
  j["seed"] = config.seed;
  j["mode"] = to_string(config.mode);
  return j;
}

ExplainerConfig config_from_json(const json& j, ExplainerConfig base) {
  if (!j.is_object()) throw InvalidArgument("config must be an object");
  auto number = [&](const char* key, double& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) {
      throw InvalidArgument(std::string(key) + ": expected a number");
    }
    out = j[key].get<double>();
  };
  auto text = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key)) return std::nullopt;
    if (!j[key].is_string()) {
      throw InvalidArgument(std::string(key) + ": expected a string");
    }
    return j[key].get<std::string>();
  };
  number("reg_exponent", base.reg_exponent);
  number("reg_weight", base.reg_weight);
  number("tau", base.salience_threshold);
  if (j.contains("exhaustive_limit")) {
    if (!j["exhaustive_limit"].is_number_integer()) {
      throw InvalidArgument("exhaustive_limit: expected an integer");
    }
    base.exhaustive_limit = j["exhaustive_limit"].get<int>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<int64_t>() < 0) {
      throw InvalidArgument("seed: expected a non-negative integer");
    }
    base.seed = j["seed"].get<uint64_t>();
  }
  if (auto s = text("subset_search")) {
    base.subset_search = parse_subset_search(*s);
  }
  if (auto s = text("atom_order_policy")) {
    base.atom_order_policy = parse_atom_order_policy(*s);
  }
  if (auto s = text("mode")) base.mode = parse_explain_mode(*s);
  base.Validate();
  return base;
}

ordered_json explanation_to_json(const Explanation& e,
                                 const std::optional<std::string>& partition_name) {
  ordered_json j;
  j["units"] = "nats";
  j["y_star"] = e.predicted_class;
  j["class_names"] = e.class_names;
  j["feature_names"] = e.feature_names;
  j["instance"] = e.instance;
  if (partition_name) j["partition_name"] = *partition_name;
  ordered_json steps = ordered_json::array();
  for (const auto& s : e.steps) {
    ordered_json step;
    step["kept"] = std::vector<int>(s.kept.begin(), s.kept.end());
    step["ruled_out"] = std::vector<int>(s.ruled_out.begin(), s.ruled_out.end());
    step["prior_log_odds"] = s.prior_log_odds;
    step["total_woe"] = s.total_woe;
    step["posterior_log_odds"] = s.posterior_log_odds();
    step["clamped_likelihoods"] = s.clamped;
    step["atom_order"] = s.atom_order;
    ordered_json atoms = ordered_json::array();
    for (int a = 0; a < e.partition.num_atoms(); ++a) {
      ordered_json atom;
      atom["name"] = e.partition.atom_name(a);
      atom["indices"] = e.partition.atom(a);
      atom["woe"] = s.atom_woes[a];
      atom["salient"] = static_cast<bool>(s.salient[a]);
      atoms.push_back(std::move(atom));
    }
    step["atoms"] = std::move(atoms);
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  j["config"] = config_to_json(e.config);
  return j;
}

const json& explanation_schema() {
  static const json schema = json::parse(internal::kExplanationSchema);
  return schema;
}

namespace {

// A small checker for the subset of JSON Schema the published document uses.
class SchemaChecker {
 public:
  explicit SchemaChecker(const json& root) : root_(root) {}

  void Check(const json& value, const json& schema, const std::string& path) {
    if (schema.contains("$ref")) {
      const std::string ref = schema["$ref"].get<std::string>();
      const std::string prefix = "#/definitions/";
      Check(value, root_.at("definitions").at(ref.substr(prefix.size())), path);
      return;
    }
    if (schema.contains("const") && value != schema["const"]) {
      Fail(path, "must equal " + schema["const"].dump());
    }
    if (schema.contains("enum")) {
      bool found = false;
      for (const auto& option : schema["enum"]) found |= option == value;
      if (!found) Fail(path, "must be one of " + schema["enum"].dump());
    }
    if (schema.contains("type") && !HasType(value, schema["type"].get<std::string>())) {
      Fail(path, "expected " + schema["type"].get<std::string>());
      return;
    }
    if (value.is_number()) {
      const double v = value.get<double>();
      if (schema.contains("minimum") && v < schema["minimum"].get<double>()) {
        Fail(path, "below minimum " + schema["minimum"].dump());
      }
      if (schema.contains("exclusiveMinimum") &&
          v <= schema["exclusiveMinimum"].get<double>()) {
        Fail(path, "must exceed " + schema["exclusiveMinimum"].dump());
      }
    }
    if (value.is_object()) {
      for (const auto& key : schema.value("required", json::array())) {
        if (!value.contains(key.get<std::string>())) {
          Fail(path, "missing field '" + key.get<std::string>() + "'");
        }
      }
      const json props = schema.value("properties", json::object());
      for (const auto& [key, child] : value.items()) {
        if (props.contains(key)) {
          Check(child, props[key], path + "." + key);
        } else if (schema.value("additionalProperties", true) == false) {
          Fail(path, "unexpected field '" + key + "'");
        }
      }
    }
    if (value.is_array()) {
      if (schema.contains("minItems") &&
          value.size() < schema["minItems"].get<size_t>()) {
        Fail(path, "needs at least " + schema["minItems"].dump() + " items");
      }
      if (schema.value("uniqueItems", false)) {
        std::set<std::string> seen;
        for (const auto& item : value) {
          if (!seen.insert(item.dump()).second) {
            Fail(path, "items must be unique");
            break;
          }
        }
      }
      if (schema.contains("items")) {
        for (size_t i = 0; i < value.size(); ++i) {
          Check(value[i], schema["items"], path + "[" + std::to_string(i) + "]");
        }
      }
    }
  }

  std::vector<std::string> errors;

 private:
  static bool HasType(const json& v, const std::string& type) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "boolean") return v.is_boolean();
    if (type == "integer") return v.is_number_integer();
    if (type == "number") return v.is_number();
    return false;
  }

  void Fail(const std::string& path, const std::string& message) {
    errors.push_back(path + ": " + message);
  }

  const json& root_;
};

std::set<int> AsSet(const json& arr) {
  std::set<int> out;
  for (const auto& v : arr) out.insert(v.get<int>());
  return out;
}

}  // namespace

std::vector<std::string> validate_explanation_json(const json& j) {
  SchemaChecker checker(explanation_schema());
  checker.Check(j, explanation_schema(), "$");
  std::vector<std::string> errors = std::move(checker.errors);
  if (!errors.empty()) return errors;

  const int k = static_cast<int>(j["class_names"].size());
  const int d = static_cast<int>(j["feature_names"].size());
  const int y_star = j["y_star"].get<int>();
  const double tau = j["config"]["tau"].get<double>();
  auto fail = [&](const std::string& msg) { errors.push_back(msg); };
  if (y_star >= k) fail("$.y_star: outside the class list");
  if (static_cast<int>(j["instance"].size()) != d) {
    fail("$.instance: length differs from feature_names");
  }

  std::set<int> parent;
  for (int c = 0; c < k; ++c) parent.insert(c);
  std::set<int> all_ruled_out;
  for (size_t t = 0; t < j["steps"].size(); ++t) {
    const json& step = j["steps"][t];
    const std::string at = "$.steps[" + std::to_string(t) + "]";
    const std::set<int> kept = AsSet(step["kept"]);
    const std::set<int> ruled = AsSet(step["ruled_out"]);
    std::set<int> together = kept;
    together.insert(ruled.begin(), ruled.end());
    if (together.size() != kept.size() + ruled.size()) {
      fail(at + ": kept and ruled_out overlap");
    }
    if (together != parent) {
      fail(at + ": kept and ruled_out do not partition the previous kept set");
    }
    if (!kept.count(y_star)) fail(at + ": kept does not contain y_star");
    for (int c : ruled) {
      if (!all_ruled_out.insert(c).second) {
        fail(at + ": class " + std::to_string(c) + " ruled out twice");
      }
    }
    double sum = 0.0;
    double scale = 1.0;
    std::set<int> covered;
    for (const auto& atom : step["atoms"]) {
      const double w = atom["woe"].get<double>();
      sum += w;
      scale = std::max(scale, std::abs(w));
      if ((std::abs(w) >= tau) != atom["salient"].get<bool>()) {
        fail(at + ": atom '" + atom["name"].get<std::string>() +
             "' salience inconsistent with tau");
      }
      for (const auto& idx : atom["indices"]) {
        const int i = idx.get<int>();
        if (i >= d || !covered.insert(i).second) {
          fail(at + ": atom indices are not a partition of the features");
        }
      }
    }
    if (static_cast<int>(covered.size()) != d) {
      fail(at + ": atoms do not cover every feature");
    }
    const double total = step["total_woe"].get<double>();
    if (std::abs(sum - total) > 1e-9 * scale) {
      fail(at + ": atom WoE sum differs from total_woe");
    }
    const double posterior = step["posterior_log_odds"].get<double>();
    const double prior = step["prior_log_odds"].get<double>();
    if (std::abs(prior + total - posterior) >
        1e-9 * std::max({1.0, std::abs(prior), std::abs(total)})) {
      fail(at + ": posterior_log_odds != prior_log_odds + total_woe");
    }
    parent = kept;
  }
  if (parent != std::set<int>{y_star}) {
    fail("$.steps: chain does not end at {y_star}");
  }
  return errors;
}

}  // namespace woe
