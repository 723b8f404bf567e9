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

#include "woe/partition.h"

#include <algorithm>
#include <set>

#include "woe/error.h"

namespace woe {

FeaturePartition::FeaturePartition(int num_features,
                                   std::vector<std::vector<int>> atoms,
                                   std::vector<std::string> atom_names)
    : num_features_(num_features),
      atoms_(std::move(atoms)),
      names_(std::move(atom_names)) {
  if (atoms_.size() != names_.size()) {
    throw InvalidArgument("partition has " + std::to_string(atoms_.size()) +
                          " atoms but " + std::to_string(names_.size()) +
                          " names");
  }
  std::vector<int> owner(num_features_, -1);
  for (size_t a = 0; a < atoms_.size(); ++a) {
    if (atoms_[a].empty()) {
      throw InvalidArgument("atom '" + names_[a] + "' is empty");
    }
    for (int j : atoms_[a]) {
      if (j < 0 || j >= num_features_) {
        throw InvalidArgument("atom '" + names_[a] + "' references feature " +
                              std::to_string(j) + " outside [0, " +
                              std::to_string(num_features_) + ")");
      }
      if (owner[j] >= 0) {
        throw InvalidArgument("feature " + std::to_string(j) +
                              " appears in atoms '" + names_[owner[j]] +
                              "' and '" + names_[a] + "'");
      }
      owner[j] = static_cast<int>(a);
    }
  }
  std::vector<int> missing;
  for (int j = 0; j < num_features_; ++j) {
    if (owner[j] < 0) missing.push_back(j);
  }
  if (!missing.empty()) {
    std::string list;
    for (int j : missing) list += (list.empty() ? "" : ", ") + std::to_string(j);
    throw InvalidArgument("partition does not cover feature(s) " + list);
  }
}

FeaturePartition FeaturePartition::Singletons(
    const std::vector<std::string>& names) {
  std::vector<std::vector<int>> atoms;
  for (size_t j = 0; j < names.size(); ++j) atoms.push_back({static_cast<int>(j)});
  return FeaturePartition(static_cast<int>(names.size()), std::move(atoms),
                          names);
}

FeaturePartition FeaturePartition::Whole(int num_features, std::string name) {
  std::vector<int> all(num_features);
  for (int j = 0; j < num_features; ++j) all[j] = j;
  return FeaturePartition(num_features, {std::move(all)}, {std::move(name)});
}

FeaturePartition partition_from_json(
    const nlohmann::ordered_json& atoms, const std::vector<std::string>& feature_names,
    std::vector<std::string>* warnings) {
  if (!atoms.is_object()) {
    throw InvalidArgument("partition must map atom names to feature lists");
  }
  std::vector<std::vector<int>> groups;
  std::vector<std::string> names;
  std::set<int> used;
  for (const auto& [atom_name, members] : atoms.items()) {
    if (!members.is_array()) {
      throw InvalidArgument("atom '" + atom_name + "' must list feature names");
    }
    std::vector<int> group;
    for (const auto& m : members) {
      if (!m.is_string()) {
        throw InvalidArgument("atom '" + atom_name +
                              "' contains a non-string entry");
      }
      const auto name = m.get<std::string>();
      const auto it =
          std::find(feature_names.begin(), feature_names.end(), name);
      if (it == feature_names.end()) {
        throw InvalidArgument("atom '" + atom_name + "' names unknown feature '" +
                              name + "'");
      }
      group.push_back(static_cast<int>(it - feature_names.begin()));
      used.insert(group.back());
    }
    groups.push_back(std::move(group));
    names.push_back(atom_name);
  }
  std::vector<int> rest;
  for (int j = 0; j < static_cast<int>(feature_names.size()); ++j) {
    if (!used.count(j)) rest.push_back(j);
  }
  if (!rest.empty()) {
    std::string other = "other";
    while (std::find(names.begin(), names.end(), other) != names.end()) {
      other += "_";
    }
    if (warnings) {
      warnings->push_back(std::to_string(rest.size()) +
                          " unlisted feature(s) placed in atom '" + other + "'");
    }
    groups.push_back(std::move(rest));
    names.push_back(other);
  }
  return FeaturePartition(static_cast<int>(feature_names.size()),
                          std::move(groups), std::move(names));
}

NamedPartitions partitions_from_json(
    const nlohmann::ordered_json& j, const std::vector<std::string>& feature_names) {
  if (!j.is_object()) {
    throw InvalidArgument("partition file must be a JSON object");
  }
  NamedPartitions out;
  for (const auto& [name, atoms] : j.items()) {
    std::vector<std::string> local;
    try {
      out.partitions.emplace(name,
                             partition_from_json(atoms, feature_names, &local));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("partition '" + name + "': " + e.what());
    }
    for (auto& w : local) out.warnings.push_back("partition '" + name + "': " + w);
  }
  return out;
}

nlohmann::ordered_json partition_to_json(const FeaturePartition& partition,
                                 const std::vector<std::string>& feature_names) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (int a = 0; a < partition.num_atoms(); ++a) {
    std::vector<std::string> members;
    for (int j : partition.atom(a)) members.push_back(feature_names.at(j));
    out[partition.atom_name(a)] = members;
  }
  return out;
}

}  // namespace woe
