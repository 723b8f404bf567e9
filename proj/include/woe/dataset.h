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

#ifndef WOE_DATASET_H_
#define WOE_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

namespace woe {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Numeric feature matrix with integer class labels. Immutable once built; the
// constructor enforces every invariant so a Dataset in hand is always valid:
// matching row counts, labels in [0, k), unique names, finite values.
class Dataset {
 public:
  Dataset(RowMatrix features, std::vector<int> labels,
          std::vector<std::string> feature_names,
          std::vector<std::string> class_names);

  int num_rows() const { return static_cast<int>(features_.rows()); }
  int num_features() const { return static_cast<int>(features_.cols()); }
  int num_classes() const { return static_cast<int>(class_names_.size()); }

  const RowMatrix& features() const { return features_; }
  std::span<const double> row(int i) const {
    return {features_.data() + static_cast<std::ptrdiff_t>(i) * features_.cols(),
            static_cast<size_t>(features_.cols())};
  }
  const std::vector<int>& labels() const { return labels_; }
  int label(int i) const { return labels_[i]; }
  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }
  const std::vector<std::string>& class_names() const { return class_names_; }

  // Rows [begin, end) with the same names and class list.
  Dataset Slice(int begin, int end) const;

  // Number of rows per class, length k.
  std::vector<int> ClassCounts() const;

  friend bool operator==(const Dataset& a, const Dataset& b);

 private:
  RowMatrix features_;
  std::vector<int> labels_;
  std::vector<std::string> feature_names_;
  std::vector<std::string> class_names_;
};

// Reads a comma-separated file with a header row. Every column other than
// `label_column` must hold finite reals. Class names are the sorted distinct
// label strings.
Dataset load_csv(const std::filesystem::path& path,
                 const std::string& label_column);
Dataset parse_csv(const std::string& text, const std::string& label_column);

// Writes features with 17 significant digits followed by the label column.
void save_csv(const Dataset& data, const std::filesystem::path& path,
              const std::string& label_column = "label");
std::string format_csv(const Dataset& data,
                       const std::string& label_column = "label");

// {feature_names, class_names, rows: [{features: [...], label: int}]}.
nlohmann::json dataset_to_json(const Dataset& data);
Dataset dataset_from_json(const nlohmann::json& j);

// Class-conditional Gaussian data: class means drawn i.i.d. N(0, 1) in R^d,
// labels uniform over classes, samples N(mean_y, I).
struct SyntheticSpec {
  int dim = 10;
  int n_classes = 2;
  int n_samples = 1000;
  uint64_t seed = 0;

  void Validate() const;
};

struct SyntheticData {
  Dataset data;
  Eigen::MatrixXd class_means;  // k x d
};

SyntheticData generate_synthetic(const SyntheticSpec& spec);

}  // namespace woe

#endif  // WOE_DATASET_H_
