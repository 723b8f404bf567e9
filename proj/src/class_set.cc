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

#include "woe/class_set.h"

#include <algorithm>
#include <iterator>

#include "woe/error.h"

namespace woe {

ClassSet::ClassSet(std::initializer_list<int> members)
    : ClassSet(std::vector<int>(members)) {}

ClassSet::ClassSet(std::vector<int> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
  if (!members_.empty() && members_.front() < 0) {
    throw InvalidArgument("class index must be non-negative, got " +
                          std::to_string(members_.front()));
  }
}

ClassSet ClassSet::All(int num_classes) {
  std::vector<int> all(num_classes);
  for (int c = 0; c < num_classes; ++c) all[c] = c;
  return ClassSet(std::move(all));
}

bool ClassSet::contains(int c) const {
  return std::binary_search(members_.begin(), members_.end(), c);
}

bool ClassSet::intersects(const ClassSet& other) const {
  auto a = members_.begin();
  auto b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

bool ClassSet::is_subset_of(const ClassSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

ClassSet ClassSet::minus(const ClassSet& other) const {
  std::vector<int> out;
  std::set_difference(members_.begin(), members_.end(),
                      other.members_.begin(), other.members_.end(),
                      std::back_inserter(out));
  return ClassSet(std::move(out));
}

ClassSet ClassSet::united(const ClassSet& other) const {
  std::vector<int> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out));
  return ClassSet(std::move(out));
}

std::string ClassSet::ToString() const {
  std::string out = "{";
  for (size_t i = 0; i < members_.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(members_[i]);
  }
  return out + "}";
}

}  // namespace woe
