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

#include "woe/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "woe/error.h"

namespace woe {
namespace {

void CheckUnique(const std::vector<std::string>& names, const char* what) {
  std::set<std::string> seen;
  for (const auto& name : names) {
    if (!seen.insert(name).second) {
      throw InvalidArgument(std::string("duplicate ") + what + " name '" +
                            name + "'");
    }
  }
}

// Splits one CSV record. Double-quoted fields may contain commas and "" as an
// escaped quote; embedded newlines are not supported.
std::vector<std::string> SplitRecord(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) {
    --e;
  }
  return std::string(s.substr(b, e - b));
}

std::string QuoteIfNeeded(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Dataset::Dataset(RowMatrix features, std::vector<int> labels,
                 std::vector<std::string> feature_names,
                 std::vector<std::string> class_names)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      feature_names_(std::move(feature_names)),
      class_names_(std::move(class_names)) {
  if (static_cast<size_t>(features_.rows()) != labels_.size()) {
    throw InvalidArgument("feature rows (" + std::to_string(features_.rows()) +
                          ") != label count (" +
                          std::to_string(labels_.size()) + ")");
  }
  if (static_cast<size_t>(features_.cols()) != feature_names_.size()) {
    throw InvalidArgument("feature_names has " +
                          std::to_string(feature_names_.size()) +
                          " entries for " + std::to_string(features_.cols()) +
                          " columns");
  }
  if (class_names_.empty()) throw InvalidArgument("no classes");
  CheckUnique(feature_names_, "feature");
  CheckUnique(class_names_, "class");
  const int k = num_classes();
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 0 || labels_[i] >= k) {
      throw InvalidArgument("label " + std::to_string(labels_[i]) +
                            " at row " + std::to_string(i) +
                            " outside [0, " + std::to_string(k) + ")");
    }
  }
  if (!features_.allFinite()) {
    throw InvalidArgument("features contain NaN or Inf");
  }
}

Dataset Dataset::Slice(int begin, int end) const {
  if (begin < 0 || end > num_rows() || begin > end) {
    throw InvalidArgument("bad slice [" + std::to_string(begin) + ", " +
                          std::to_string(end) + ")");
  }
  RowMatrix block = features_.middleRows(begin, end - begin);
  std::vector<int> labels(labels_.begin() + begin, labels_.begin() + end);
  return Dataset(std::move(block), std::move(labels), feature_names_,
                 class_names_);
}

std::vector<int> Dataset::ClassCounts() const {
  std::vector<int> counts(num_classes(), 0);
  for (int y : labels_) ++counts[y];
  return counts;
}

bool operator==(const Dataset& a, const Dataset& b) {
  return a.feature_names_ == b.feature_names_ &&
         a.class_names_ == b.class_names_ && a.labels_ == b.labels_ &&
         a.features_.rows() == b.features_.rows() &&
         a.features_.cols() == b.features_.cols() &&
         a.features_ == b.features_;
}

Dataset parse_csv(const std::string& text, const std::string& label_column) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("CSV is empty");
  std::vector<std::string> header = SplitRecord(line);
  for (auto& h : header) h = Trim(h);
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) {
    header[0] = header[0].substr(3);
  }
  const auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end()) {
    throw NotFound("label column '" + label_column + "' not in CSV header");
  }
  const size_t label_idx = label_it - header.begin();
  std::vector<std::string> feature_names;
  for (size_t c = 0; c < header.size(); ++c) {
    if (c != label_idx) feature_names.push_back(header[c]);
  }

  std::vector<double> values;
  std::vector<std::string> raw_labels;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const std::vector<std::string> fields = SplitRecord(line);
    if (fields.size() != header.size()) {
      throw InvalidArgument("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()));
    }
    for (size_t c = 0; c < fields.size(); ++c) {
      const std::string cell = Trim(fields[c]);
      if (c == label_idx) {
        raw_labels.push_back(cell);
        continue;
      }
      double v = 0;
      const auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size() ||
          cell.empty() || !std::isfinite(v)) {
        throw InvalidArgument("line " + std::to_string(line_no) +
                              ", column '" + header[c] +
                              "': cannot parse '" + cell +
                              "' as a finite number");
      }
      values.push_back(v);
    }
  }

  std::vector<std::string> class_names(raw_labels.begin(), raw_labels.end());
  std::sort(class_names.begin(), class_names.end());
  class_names.erase(std::unique(class_names.begin(), class_names.end()),
                    class_names.end());
  if (class_names.size() < 2) {
    throw InvalidArgument("label column '" + label_column +
                          "' has fewer than 2 classes");
  }
  std::map<std::string, int> index;
  for (size_t i = 0; i < class_names.size(); ++i) {
    index[class_names[i]] = static_cast<int>(i);
  }
  std::vector<int> labels;
  labels.reserve(raw_labels.size());
  for (const auto& l : raw_labels) labels.push_back(index.at(l));

  const auto n = static_cast<Eigen::Index>(raw_labels.size());
  const auto d = static_cast<Eigen::Index>(feature_names.size());
  RowMatrix features = Eigen::Map<RowMatrix>(values.data(), n, d);
  return Dataset(std::move(features), std::move(labels),
                 std::move(feature_names), std::move(class_names));
}

Dataset load_csv(const std::filesystem::path& path,
                 const std::string& label_column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open CSV file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), label_column);
}

std::string format_csv(const Dataset& data, const std::string& label_column) {
  std::string out;
  for (const auto& name : data.feature_names()) out += QuoteIfNeeded(name) + ",";
  out += QuoteIfNeeded(label_column) + "\n";
  for (int i = 0; i < data.num_rows(); ++i) {
    for (double v : data.row(i)) out += FormatDouble(v) + ",";
    out += QuoteIfNeeded(data.class_names()[data.label(i)]) + "\n";
  }
  return out;
}

void save_csv(const Dataset& data, const std::filesystem::path& path,
              const std::string& label_column) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NotFound("cannot write CSV file " + path.string());
  out << format_csv(data, label_column);
}

nlohmann::json dataset_to_json(const Dataset& data) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < data.num_rows(); ++i) {
    const auto r = data.row(i);
    rows.push_back({{"features", std::vector<double>(r.begin(), r.end())},
                    {"label", data.label(i)}});
  }
  return {{"feature_names", data.feature_names()},
          {"class_names", data.class_names()},
          {"rows", std::move(rows)}};
}

Dataset dataset_from_json(const nlohmann::json& j) {
  try {
    auto feature_names = j.at("feature_names").get<std::vector<std::string>>();
    auto class_names = j.at("class_names").get<std::vector<std::string>>();
    const auto& rows = j.at("rows");
    const auto d = static_cast<Eigen::Index>(feature_names.size());
    RowMatrix features(static_cast<Eigen::Index>(rows.size()), d);
    std::vector<int> labels;
    for (size_t i = 0; i < rows.size(); ++i) {
      const auto x = rows[i].at("features").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(x.size()) != d) {
        throw InvalidArgument("row " + std::to_string(i) + " has " +
                              std::to_string(x.size()) + " features, expected " +
                              std::to_string(d));
      }
      for (Eigen::Index c = 0; c < d; ++c) features(i, c) = x[c];
      labels.push_back(rows[i].at("label").get<int>());
    }
    return Dataset(std::move(features), std::move(labels),
                   std::move(feature_names), std::move(class_names));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed dataset JSON: ") + e.what());
  }
}

}  // namespace woe
