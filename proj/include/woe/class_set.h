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

#ifndef WOE_CLASS_SET_H_
#define WOE_CLASS_SET_H_

#include <compare>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace woe {

// A set of class indices, kept sorted and duplicate-free. Composite
// hypotheses of the form "y in U" are expressed with this type.
class ClassSet {
 public:
  ClassSet() = default;
  ClassSet(std::initializer_list<int> members);
  explicit ClassSet(std::vector<int> members);

  // {0, 1, ..., num_classes - 1}.
  static ClassSet All(int num_classes);

  bool empty() const { return members_.empty(); }
  int size() const { return static_cast<int>(members_.size()); }
  bool contains(int c) const;
  std::span<const int> members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  int front() const { return members_.front(); }

  bool intersects(const ClassSet& other) const;
  bool is_subset_of(const ClassSet& other) const;
  ClassSet minus(const ClassSet& other) const;
  ClassSet united(const ClassSet& other) const;

  std::string ToString() const;

  // Lexicographic on the sorted member list.
  friend auto operator<=>(const ClassSet&, const ClassSet&) = default;
  friend bool operator==(const ClassSet&, const ClassSet&) = default;

 private:
  std::vector<int> members_;
};

}  // namespace woe

#endif  // WOE_CLASS_SET_H_
