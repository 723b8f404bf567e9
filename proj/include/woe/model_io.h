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

#ifndef WOE_MODEL_IO_H_
#define WOE_MODEL_IO_H_

#include <filesystem>

#include "json.hpp"
#include "woe/models.h"

namespace woe {

// Model files:
//   {"model_type": "gnb"|"logistic"|"lda"|"qda",
//    "class_names": [...], "feature_names": [...],
//    "parameters": {...}, "metadata": {"smoothing"|"ridge": ...}}
// Doubles are written with shortest round-trip formatting, so reading a file
// back reproduces the parameters bit for bit.
nlohmann::json model_to_json(const ModelHandle& model);
ModelHandle model_from_json(const nlohmann::json& j);

void save_model(const ModelHandle& model, const std::filesystem::path& path);
ModelHandle load_model(const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const nlohmann::json& j,
                     const std::filesystem::path& path);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const nlohmann::json& j);

}  // namespace woe

#endif  // WOE_MODEL_IO_H_
