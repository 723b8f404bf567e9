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

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "woe/class_set.h"
#include "woe/error.h"
#include "woe/partition.h"

namespace woe {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ojson = nlohmann::ordered_json;

const std::vector<std::string> kFeatures = {"age", "bmi", "bp", "sugar"};

TEST(ClassSet, SortsAndDeduplicates) {
  const ClassSet s{3, 1, 3, 0};
  EXPECT_THAT(std::vector<int>(s.begin(), s.end()), ElementsAre(0, 1, 3));
  EXPECT_EQ(s.ToString(), "{0,1,3}");
  EXPECT_THROW(ClassSet({-1, 2}), InvalidArgument);
}

TEST(ClassSet, SetAlgebra) {
  const ClassSet a{0, 1, 2}, b{2, 3};
  EXPECT_EQ(a.minus(b), (ClassSet{0, 1}));
  EXPECT_EQ(a.united(b), ClassSet::All(4));
  EXPECT_TRUE(a.intersects(b));
  EXPECT_FALSE((ClassSet{0}).intersects(ClassSet{1}));
  EXPECT_TRUE((ClassSet{1, 2}).is_subset_of(a));
  EXPECT_FALSE(b.is_subset_of(a));
  EXPECT_LT((ClassSet{0, 1}), (ClassSet{0, 2}));
}

TEST(FeaturePartition, ValidatesCoverage) {
  EXPECT_NO_THROW(FeaturePartition(3, {{0, 2}, {1}}, {"a", "b"}));
  try {
    FeaturePartition(4, {{0}, {2}}, {"a", "b"});
    FAIL() << "expected an error";
  } catch (const InvalidArgument& e) {
    EXPECT_THAT(e.what(), HasSubstr("does not cover feature(s) 1, 3"));
  }
  EXPECT_THROW(FeaturePartition(2, {{0, 1}, {1}}, {"a", "b"}),
               InvalidArgument);
  EXPECT_THROW(FeaturePartition(2, {{0, 1}, {}}, {"a", "b"}), InvalidArgument);
  EXPECT_THROW(FeaturePartition(2, {{0, 2}}, {"a"}), InvalidArgument);
  EXPECT_THROW(FeaturePartition(2, {{0}, {1}}, {"a"}), InvalidArgument);
}

TEST(FeaturePartition, Factories) {
  const auto s = FeaturePartition::Singletons(kFeatures);
  EXPECT_EQ(s.num_atoms(), 4);
  EXPECT_EQ(s.atom_name(2), "bp");
  const auto w = FeaturePartition::Whole(4);
  EXPECT_EQ(w.num_atoms(), 1);
  EXPECT_THAT(w.atom(0), ElementsAre(0, 1, 2, 3));
}

TEST(PartitionJson, KeepsAtomOrderAndAddsOther) {
  const ojson j = ojson::parse(R"({
    "clinical": {"vitals": ["bp", "bmi"], "demo": ["age"]},
    "flat": {"all": ["sugar", "age", "bmi", "bp"]}
  })");
  const NamedPartitions named = partitions_from_json(j, kFeatures);
  ASSERT_EQ(named.partitions.size(), 2u);
  const auto& clinical = named.partitions.at("clinical");
  EXPECT_THAT(clinical.atom_names(), ElementsAre("vitals", "demo", "other"));
  EXPECT_THAT(clinical.atom(0), ElementsAre(2, 1));
  EXPECT_THAT(clinical.atom(2), ElementsAre(3));
  ASSERT_EQ(named.warnings.size(), 1u);
  EXPECT_THAT(named.warnings[0], HasSubstr("clinical"));
  EXPECT_THAT(named.warnings[0], HasSubstr("'other'"));

  const ojson back = partition_to_json(clinical, kFeatures);
  EXPECT_EQ(back.dump(),
            R"({"vitals":["bp","bmi"],"demo":["age"],"other":["sugar"]})");
  EXPECT_EQ(partition_from_json(back, kFeatures), clinical);
}

TEST(PartitionJson, Errors) {
  EXPECT_THROW(partitions_from_json(ojson::array(), kFeatures),
               InvalidArgument);
  try {
    partitions_from_json(ojson::parse(R"({"p": {"a": ["height"]}})"),
                         kFeatures);
    FAIL() << "expected an error";
  } catch (const InvalidArgument& e) {
    EXPECT_THAT(e.what(), HasSubstr("height"));
    EXPECT_THAT(e.what(), HasSubstr("'p'"));
  }
  EXPECT_THROW(partition_from_json(ojson::parse(R"({"a": ["age", "age"]})"),
                                   kFeatures),
               InvalidArgument);
  EXPECT_THROW(partition_from_json(ojson::parse(R"({"a": "age"})"), kFeatures),
               InvalidArgument);
}

}  // namespace
}  // namespace woe
