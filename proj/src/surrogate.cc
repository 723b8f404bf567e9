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

#include "woe/surrogate.h"

#include <algorithm>

#include "woe/error.h"
#include "woe/model_io.h"

namespace woe {

ModelHandle SurrogateModel::AsModel() const {
  return ModelHandle(inner, class_names, feature_names);
}

int SurrogateModel::ToSurrogateClass(int black_box_class) const {
  const auto it =
      std::find(class_ids.begin(), class_ids.end(), black_box_class);
  return it == class_ids.end() ? -1 : static_cast<int>(it - class_ids.begin());
}

SurrogateModel fit_surrogate(const ModelHandle& black_box,
                             const RowMatrix& background, double smoothing) {
  if (background.rows() == 0) throw InvalidArgument("background is empty");
  if (background.cols() != black_box.num_features()) {
    throw InvalidArgument("background has " +
                          std::to_string(background.cols()) +
                          " columns, black box expects " +
                          std::to_string(black_box.num_features()));
  }
  const int k = black_box.num_classes();
  const auto n = static_cast<int>(background.rows());
  std::vector<int> predictions(n);
  for (int i = 0; i < n; ++i) {
    const std::span<const double> row(background.data() + i * background.cols(),
                                      static_cast<size_t>(background.cols()));
    int y = -1;
    try {
      y = predict(black_box, row);
    } catch (const std::exception& e) {
      throw Error("black box failed on background row " + std::to_string(i) +
                  ": " + e.what());
    }
    if (y < 0 || y >= k) {
      throw Error("black box returned class " + std::to_string(y) +
                  " on background row " + std::to_string(i));
    }
    predictions[i] = y;
  }

  std::vector<int> counts(k, 0);
  for (int y : predictions) ++counts[y];
  SurrogateModel out;
  std::vector<int> remap(k, -1);
  for (int c = 0; c < k; ++c) {
    if (counts[c] >= 2) {
      remap[c] = static_cast<int>(out.class_ids.size());
      out.class_ids.push_back(c);
      out.class_names.push_back(black_box.class_names()[c]);
    } else {
      out.warnings.push_back("class '" + black_box.class_names()[c] +
                             "' predicted " + std::to_string(counts[c]) +
                             " time(s); dropped from the surrogate");
    }
  }
  if (out.class_ids.size() < 2) {
    throw InvalidArgument(
        "single predicted class: the black box predicted fewer than 2 "
        "distinct classes on the background data");
  }

  std::vector<int> kept_rows;
  std::vector<int> labels;
  for (int i = 0; i < n; ++i) {
    if (remap[predictions[i]] >= 0) {
      kept_rows.push_back(i);
      labels.push_back(remap[predictions[i]]);
    }
  }
  RowMatrix features(static_cast<Eigen::Index>(kept_rows.size()),
                     background.cols());
  for (size_t r = 0; r < kept_rows.size(); ++r) {
    features.row(static_cast<Eigen::Index>(r)) = background.row(kept_rows[r]);
  }
  const Dataset fit_data(std::move(features), std::move(labels),
                         black_box.feature_names(), out.class_names);
  out.inner = fit_gnb(fit_data, {.smoothing = smoothing});
  out.feature_names = black_box.feature_names();
  out.n_fit = n;
  if (const auto* box = black_box.get_if<BlackBoxModel>()) {
    out.source = box->id;
  } else {
    out.source = black_box.type_name();
  }
  return out;
}

Explanation explain_black_box(const ModelHandle& black_box,
                              const SurrogateModel& surrogate,
                              std::span<const double> x,
                              const FeaturePartition& partition,
                              const ExplainerConfig& config) {
  const int y = predict(black_box, x);
  const int inner = surrogate.ToSurrogateClass(y);
  if (inner < 0) {
    throw NotFound("predicted class '" +
                   (y >= 0 && y < black_box.num_classes()
                        ? black_box.class_names()[y]
                        : std::to_string(y)) +
                   "' is absent from the surrogate");
  }
  return explain(surrogate.AsModel(), x, partition, config, inner);
}

nlohmann::json surrogate_to_json(
    const SurrogateModel& surrogate,
    const std::vector<std::string>& black_box_class_names) {
  nlohmann::json j = model_to_json(surrogate.AsModel());
  j["surrogate_of"] = surrogate.source;
  j["class_ids"] = surrogate.class_ids;
  j["n_fit"] = surrogate.n_fit;
  j["black_box_class_names"] = black_box_class_names;
  return j;
}

SurrogateModel surrogate_from_json(const nlohmann::json& j) {
  if (!j.contains("surrogate_of")) {
    throw InvalidArgument("not a surrogate file (no 'surrogate_of' field)");
  }
  const ModelHandle handle = model_from_json(j);
  const auto* gnb = handle.get_if<GaussianNBModel>();
  if (!gnb) throw InvalidArgument("surrogate must be a GNB model");
  SurrogateModel out;
  out.inner = *gnb;
  out.class_names = handle.class_names();
  out.feature_names = handle.feature_names();
  try {
    out.source = j.at("surrogate_of").get<std::string>();
    out.class_ids = j.at("class_ids").get<std::vector<int>>();
    out.n_fit = j.value("n_fit", 0);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed surrogate JSON: ") + e.what());
  }
  if (out.class_ids.size() != out.class_names.size()) {
    throw InvalidArgument("class_ids length differs from class_names");
  }
  return out;
}

}  // namespace woe
