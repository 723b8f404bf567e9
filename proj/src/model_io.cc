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

#include "woe/model_io.h"

#include <fstream>
#include <sstream>

#include "woe/error.h"

namespace woe {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.is_array()) throw InvalidArgument("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols) {
      throw InvalidArgument("ragged matrix in model file");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd vector_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                           static_cast<Eigen::Index>(values.size()));
}

json model_to_json(const ModelHandle& model) {
  json out = {{"model_type", model.type_name()},
              {"class_names", model.class_names()},
              {"feature_names", model.feature_names()}};
  if (const auto* gnb = model.get_if<GaussianNBModel>()) {
    out["parameters"] = {{"means", matrix_to_json(gnb->means)},
                         {"variances", matrix_to_json(gnb->variances)},
                         {"log_priors", vector_to_json(gnb->log_priors)}};
    out["metadata"] = {{"smoothing", gnb->smoothing},
                       {"epsilon", gnb->epsilon}};
  } else if (const auto* lr = model.get_if<LogisticModel>()) {
    out["parameters"] = {{"weights", vector_to_json(lr->weights)},
                         {"bias", lr->bias},
                         {"log_priors", vector_to_json(lr->log_priors)}};
    out["metadata"] = json::object();
  } else if (const auto* full = model.get_if<GaussianFullModel>()) {
    json covs = json::array();
    for (const auto& c : full->covariances) covs.push_back(matrix_to_json(c));
    out["parameters"] = {{"means", matrix_to_json(full->means)},
                         {"covariances", std::move(covs)},
                         {"log_priors", vector_to_json(full->log_priors)}};
    out["metadata"] = {{"ridge", full->ridge}};
  } else {
    throw Unsupported("black-box models cannot be serialized");
  }
  return out;
}

ModelHandle model_from_json(const json& j) {
  try {
    const auto type = j.at("model_type").get<std::string>();
    auto class_names = j.at("class_names").get<std::vector<std::string>>();
    auto feature_names = j.at("feature_names").get<std::vector<std::string>>();
    const json& p = j.at("parameters");
    const json meta = j.value("metadata", json::object());
    if (type == "gnb") {
      GaussianNBModel m;
      m.means = matrix_from_json(p.at("means"));
      m.variances = matrix_from_json(p.at("variances"));
      m.log_priors = vector_from_json(p.at("log_priors"));
      m.smoothing = meta.value("smoothing", 0.0);
      m.epsilon = meta.value("epsilon", 0.0);
      return ModelHandle(std::move(m), std::move(class_names),
                         std::move(feature_names));
    }
    if (type == "logistic") {
      LogisticModel m;
      m.weights = vector_from_json(p.at("weights"));
      m.bias = p.at("bias").get<double>();
      m.log_priors = vector_from_json(p.at("log_priors"));
      return ModelHandle(std::move(m), std::move(class_names),
                         std::move(feature_names));
    }
    if (type == "lda" || type == "qda") {
      GaussianFullModel m;
      m.shared_covariance = type == "lda";
      m.means = matrix_from_json(p.at("means"));
      for (const auto& c : p.at("covariances")) {
        m.covariances.push_back(matrix_from_json(c));
      }
      m.log_priors = vector_from_json(p.at("log_priors"));
      m.ridge = meta.value("ridge", 0.0);
      return ModelHandle(std::move(m), std::move(class_names),
                         std::move(feature_names));
    }
    throw InvalidArgument("unknown model_type '" + type + "'");
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed model JSON: ") + e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

void write_json_file(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NotFound("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

void save_model(const ModelHandle& model, const std::filesystem::path& path) {
  write_json_file(model_to_json(model), path);
}

ModelHandle load_model(const std::filesystem::path& path) {
  return model_from_json(read_json_file(path));
}

}  // namespace woe
