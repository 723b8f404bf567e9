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

#ifndef WOE_PARTITION_H_
#define WOE_PARTITION_H_

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace woe {

// Ordered, disjoint groups of feature indices ("atoms") covering every
// feature exactly once.
class FeaturePartition {
 public:
  FeaturePartition(int num_features, std::vector<std::vector<int>> atoms,
                   std::vector<std::string> atom_names);

  // One atom per feature, named after the feature.
  static FeaturePartition Singletons(const std::vector<std::string>& names);
  // A single atom holding every feature.
  static FeaturePartition Whole(int num_features, std::string name = "all");

  int num_features() const { return num_features_; }
  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  const std::vector<int>& atom(int i) const { return atoms_[i]; }
  const std::vector<std::vector<int>>& atoms() const { return atoms_; }
  const std::string& atom_name(int i) const { return names_[i]; }
  const std::vector<std::string>& atom_names() const { return names_; }

  friend bool operator==(const FeaturePartition&,
                         const FeaturePartition&) = default;

 private:
  int num_features_;
  std::vector<std::vector<int>> atoms_;
  std::vector<std::string> names_;
};

struct NamedPartitions {
  std::map<std::string, FeaturePartition> partitions;
  std::vector<std::string> warnings;
};

// Parses {partition_name: {atom_name: [feature names]}}. Atom order follows
// the file. Features not listed in a partition are collected into an extra
// "other" atom and a warning is recorded. Unknown or repeated feature names
// are errors.
NamedPartitions partitions_from_json(
    const nlohmann::ordered_json& j, const std::vector<std::string>& feature_names);

// Parse with nlohmann::ordered_json so that atom order survives.
// Builds one partition from {atom_name: [feature names]} with the same rules.
FeaturePartition partition_from_json(
    const nlohmann::ordered_json& atoms, const std::vector<std::string>& feature_names,
    std::vector<std::string>* warnings = nullptr);

nlohmann::ordered_json partition_to_json(const FeaturePartition& partition,
                                 const std::vector<std::string>& feature_names);

}  // namespace woe

#endif  // WOE_PARTITION_H_
