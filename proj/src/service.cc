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

#include "woe/service.h"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <utility>

#include "httplib.h"
#include "json.hpp"
#include "woe/error.h"
#include "woe/explanation_json.h"

namespace woe {
namespace {

using ojson = nlohmann::ordered_json;

constexpr int kDefaultLimit = 50;
constexpr int kMaxLimit = 1000;

struct FieldError {
  std::string field;
  std::string message;
};

HttpResponse Json(int status, const ojson& j) {
  return {status, j.dump(), "application/json"};
}

HttpResponse ErrorResponse(int status, const std::string& message,
                           const std::vector<FieldError>& fields = {}) {
  ojson f = ojson::array();
  for (const auto& e : fields) {
    f.push_back({{"field", e.field}, {"message", e.message}});
  }
  return Json(status, {{"error",
                        {{"status", status},
                         {"message", message},
                         {"fields", f}}}});
}

bool CheckFeatureNames(const std::vector<std::string>& expected,
                       const std::vector<std::string>& actual) {
  return expected == actual;
}

// Parses a non-negative integer query parameter.
std::optional<int> ParseCount(const std::string& text) {
  if (text.empty() || text.size() > 9) return std::nullopt;
  int value = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') return std::nullopt;
    value = value * 10 + (ch - '0');
  }
  return value;
}

std::optional<int> FeatureIndex(const ojson& v,
                                const std::vector<std::string>& names) {
  if (v.is_number_integer()) {
    const auto i = v.get<long long>();
    if (i >= 0 && i < static_cast<long long>(names.size())) {
      return static_cast<int>(i);
    }
    return std::nullopt;
  }
  if (v.is_string()) {
    for (size_t i = 0; i < names.size(); ++i) {
      if (names[i] == v.get<std::string>()) return static_cast<int>(i);
    }
  }
  return std::nullopt;
}

// Inline partition: either [[features...], ...] or {atom: [features...]}.
// Features are indices or names. Unlike partition files, unlisted features
// are an error here.
std::optional<FeaturePartition> ParseInlinePartition(
    const ojson& j, const std::vector<std::string>& feature_names,
    std::vector<FieldError>& errors) {
  std::vector<std::vector<int>> atoms;
  std::vector<std::string> names;
  auto read_atom = [&](const ojson& members, const std::string& field) {
    std::vector<int> atom;
    if (!members.is_array()) {
      errors.push_back({field, "must be an array of feature indices or names"});
      return false;
    }
    for (size_t i = 0; i < members.size(); ++i) {
      const auto idx = FeatureIndex(members[i], feature_names);
      if (!idx) {
        errors.push_back({field + "[" + std::to_string(i) + "]",
                          "unknown feature " + members[i].dump()});
        return false;
      }
      atom.push_back(*idx);
    }
    atoms.push_back(std::move(atom));
    return true;
  };
  if (j.is_array()) {
    for (size_t a = 0; a < j.size(); ++a) {
      if (!read_atom(j[a], "partition[" + std::to_string(a) + "]")) {
        return std::nullopt;
      }
      names.push_back("atom_" + std::to_string(a));
    }
  } else if (j.is_object()) {
    for (const auto& [name, members] : j.items()) {
      if (!read_atom(members, "partition." + name)) return std::nullopt;
      names.push_back(name);
    }
  } else {
    errors.push_back({"partition", "must be an array or an object"});
    return std::nullopt;
  }
  try {
    return FeaturePartition(static_cast<int>(feature_names.size()),
                            std::move(atoms), std::move(names));
  } catch (const Error& e) {
    errors.push_back({"partition", e.what()});
    return std::nullopt;
  }
}

}  // namespace

std::shared_ptr<const ServiceState> make_service_state(
    Dataset data, ModelHandle model, std::optional<SurrogateModel> surrogate,
    NamedPartitions partitions, ExplainerConfig defaults) {
  if (!CheckFeatureNames(data.feature_names(), model.feature_names())) {
    throw InvalidArgument(
        "model and dataset feature names differ (model has " +
        std::to_string(model.num_features()) + " features, dataset " +
        std::to_string(data.num_features()) + ")");
  }
  if (!model.is_native() && !surrogate) {
    throw InvalidArgument("a black-box model needs a surrogate");
  }
  if (surrogate && surrogate->feature_names != model.feature_names()) {
    throw InvalidArgument("surrogate and model feature names differ");
  }
  defaults.Validate();
  for (const auto& [name, p] : partitions.partitions) {
    if (p.num_features() != data.num_features()) {
      throw InvalidArgument("partition '" + name + "' has wrong arity");
    }
  }
  partitions.partitions.try_emplace(
      kSingletonPartition, FeaturePartition::Singletons(data.feature_names()));
  return std::make_shared<const ServiceState>(ServiceState{
      std::move(data), std::move(model), std::move(surrogate),
      std::move(partitions.partitions), defaults,
      std::move(partitions.warnings)});
}

WoeService::WoeService(std::shared_ptr<const ServiceState> state)
    : state_(std::move(state)) {
  if (!state_) throw InvalidArgument("service state is null");
}

std::shared_ptr<const ServiceState> WoeService::state() const {
  std::lock_guard<std::mutex> lock(state_mutex_);
  return state_;
}

void WoeService::Swap(std::shared_ptr<const ServiceState> state) {
  if (!state) throw InvalidArgument("service state is null");
  std::lock_guard<std::mutex> lock(state_mutex_);
  state_ = std::move(state);
}

HttpResponse WoeService::Health() const {
  return Json(200, {{"status", "ok"}});
}

HttpResponse WoeService::Meta() const {
  const auto s = state();
  ojson partitions = ojson::object();
  for (const auto& [name, p] : s->partitions) {
    partitions[name] = partition_to_json(p, s->data.feature_names());
  }
  ojson j;
  j["class_names"] = s->model.class_names();
  j["feature_names"] = s->data.feature_names();
  j["model_type"] = s->model.type_name();
  j["surrogate"] = s->surrogate.has_value();
  if (s->surrogate) j["explained_class_names"] = s->surrogate->class_names;
  j["num_rows"] = s->data.num_rows();
  j["partitions"] = partitions;
  j["default_partition"] = kSingletonPartition;
  j["config_defaults"] = config_to_json(s->defaults);
  j["units"] = "nats";
  j["warnings"] = s->warnings;
  return Json(200, j);
}

HttpResponse WoeService::Instances(
    const std::map<std::string, std::string>& query) const {
  const auto s = state();
  std::vector<FieldError> errors;
  int offset = 0;
  int limit = kDefaultLimit;
  for (const auto& [key, value] : query) {
    if (key != "offset" && key != "limit") {
      errors.push_back({key, "unknown query parameter"});
      continue;
    }
    const auto n = ParseCount(value);
    if (!n) {
      errors.push_back({key, "must be a non-negative integer"});
    } else if (key == "offset") {
      offset = *n;
    } else if (*n < 1 || *n > kMaxLimit) {
      errors.push_back(
          {key, "must be between 1 and " + std::to_string(kMaxLimit)});
    } else {
      limit = *n;
    }
  }
  if (!errors.empty()) return ErrorResponse(400, "invalid query", errors);

  const int end = std::min(s->data.num_rows(), offset + limit);
  ojson rows = ojson::array();
  try {
    std::unique_lock<std::mutex> lock(black_box_mutex_, std::defer_lock);
    if (const auto* box = s->model.get_if<BlackBoxModel>();
        box && !box->thread_safe) {
      lock.lock();
    }
    for (int i = offset; i < end; ++i) {
      const int predicted = predict(s->model, s->data.row(i));
      const auto features = s->data.row(i);
      rows.push_back({{"index", i},
                      {"features", std::vector<double>(features.begin(),
                                                       features.end())},
                      {"label", s->data.label(i)},
                      {"label_name", s->data.class_names()[s->data.label(i)]},
                      {"predicted", predicted},
                      {"predicted_name", s->model.class_names()[predicted]}});
    }
  } catch (const std::exception& e) {
    return ErrorResponse(500, std::string("prediction failed: ") + e.what());
  }
  return Json(200, {{"offset", offset},
                    {"limit", limit},
                    {"total", s->data.num_rows()},
                    {"rows", rows}});
}

HttpResponse WoeService::Explain(const std::string& body) const {
  const auto s = state();
  ojson req;
  try {
    req = ojson::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    return ErrorResponse(400, "request body is not valid JSON",
                         {{"", e.what()}});
  }
  if (!req.is_object()) {
    return ErrorResponse(400, "request body must be a JSON object");
  }

  std::vector<FieldError> errors;
  static const std::vector<std::string> kFields = {
      "instance", "row_index", "partition_name", "partition",
      "mode",     "tau",       "atom_order_policy", "seed"};
  for (const auto& [key, value] : req.items()) {
    if (std::find(kFields.begin(), kFields.end(), key) == kFields.end()) {
      errors.push_back({key, "unknown field"});
    }
  }

  const int d = s->data.num_features();
  std::vector<double> instance;
  std::optional<long long> row_index;
  if (req.contains("instance") == req.contains("row_index")) {
    errors.push_back(
        {"instance", "exactly one of 'instance' and 'row_index' is required"});
  } else if (req.contains("instance")) {
    const auto& v = req["instance"];
    if (!v.is_array() || static_cast<int>(v.size()) != d) {
      errors.push_back({"instance", "must be an array of " +
                                        std::to_string(d) + " numbers"});
    } else {
      for (size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) {
          errors.push_back({"instance[" + std::to_string(i) + "]",
                            "must be a finite number"});
        } else {
          instance.push_back(v[i].get<double>());
        }
      }
    }
  } else {
    const auto& v = req["row_index"];
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      errors.push_back({"row_index", "must be a non-negative integer"});
    } else {
      row_index = v.get<long long>();
    }
  }

  ExplainerConfig config = s->defaults;
  if (req.contains("mode")) {
    const auto& v = req["mode"];
    if (v == "oneshot") {
      config.mode = ExplainMode::kOneShot;
    } else if (v == "sequential") {
      config.mode = ExplainMode::kSequential;
    } else {
      errors.push_back({"mode", "must be 'oneshot' or 'sequential'"});
    }
  }
  if (req.contains("tau")) {
    const auto& v = req["tau"];
    if (!v.is_number() || !std::isfinite(v.get<double>()) ||
        v.get<double>() < 0) {
      errors.push_back({"tau", "must be a non-negative number"});
    } else {
      config.salience_threshold = v.get<double>();
    }
  }
  if (req.contains("atom_order_policy")) {
    const auto& v = req["atom_order_policy"];
    try {
      if (!v.is_string()) throw InvalidArgument("");
      config.atom_order_policy = parse_atom_order_policy(v.get<std::string>());
    } catch (const Error&) {
      errors.push_back({"atom_order_policy",
                        "must be 'given', 'random' or 'by_abs_conditional_woe'"});
    }
  }
  if (req.contains("seed")) {
    const auto& v = req["seed"];
    if (!v.is_number_unsigned()) {
      errors.push_back({"seed", "must be a non-negative integer"});
    } else {
      config.seed = v.get<uint64_t>();
    }
  }

  std::optional<FeaturePartition> inline_partition;
  std::string partition_name = kSingletonPartition;
  if (req.contains("partition") && req.contains("partition_name")) {
    errors.push_back(
        {"partition", "give either 'partition' or 'partition_name', not both"});
  } else if (req.contains("partition")) {
    inline_partition =
        ParseInlinePartition(req["partition"], s->data.feature_names(), errors);
  } else if (req.contains("partition_name")) {
    if (!req["partition_name"].is_string()) {
      errors.push_back({"partition_name", "must be a string"});
    } else {
      partition_name = req["partition_name"].get<std::string>();
    }
  }
  if (!errors.empty()) return ErrorResponse(400, "invalid request", errors);

  if (row_index && *row_index >= s->data.num_rows()) {
    return ErrorResponse(404, "row " + std::to_string(*row_index) +
                                  " not found (dataset has " +
                                  std::to_string(s->data.num_rows()) + " rows)",
                         {{"row_index", "out of range"}});
  }
  const FeaturePartition* partition = nullptr;
  std::optional<std::string> reported_name;
  if (inline_partition) {
    partition = &*inline_partition;
  } else {
    const auto it = s->partitions.find(partition_name);
    if (it == s->partitions.end()) {
      return ErrorResponse(404, "unknown partition '" + partition_name + "'",
                           {{"partition_name", "not found"}});
    }
    partition = &it->second;
    reported_name = partition_name;
  }
  if (row_index) {
    const auto row = s->data.row(static_cast<int>(*row_index));
    instance.assign(row.begin(), row.end());
  }

  try {
    Explanation explanation = [&] {
      if (s->surrogate) {
        std::unique_lock<std::mutex> lock(black_box_mutex_, std::defer_lock);
        if (const auto* box = s->model.get_if<BlackBoxModel>();
            box && !box->thread_safe) {
          lock.lock();
        }
        return explain_black_box(s->model, *s->surrogate, instance, *partition,
                                 config);
      }
      return explain(s->model, instance, *partition, config);
    }();
    const ojson out = explanation_to_json(explanation, reported_name);
    const auto problems = validate_explanation_json(out);
    if (!problems.empty()) {
      return ErrorResponse(500, "explanation failed validation: " + problems[0]);
    }
    return Json(200, out);
  } catch (const InvalidArgument& e) {
    return ErrorResponse(400, e.what());
  } catch (const NotFound& e) {
    return ErrorResponse(404, e.what());
  } catch (const std::exception& e) {
    return ErrorResponse(500, std::string("explanation failed: ") + e.what());
  }
}

HttpResponse WoeService::Schema() const {
  return {200, explanation_schema().dump(), "application/schema+json"};
}

HttpResponse WoeService::Handle(const std::string& method,
                                const std::string& path,
                                const std::map<std::string, std::string>& query,
                                const std::string& body) const {
  const bool get = method == "GET";
  const bool post = method == "POST";
  if (path == "/api/health" && get) return Health();
  if (path == "/api/meta" && get) return Meta();
  if (path == "/api/instances" && get) return Instances(query);
  if (path == "/api/schema" && get) return Schema();
  if (path == "/api/explain" && post) return Explain(body);
  if (path == "/api/health" || path == "/api/meta" ||
      path == "/api/instances" || path == "/api/schema" ||
      path == "/api/explain") {
    return ErrorResponse(405, "method " + method + " not allowed on " + path);
  }
  return ErrorResponse(404, "no route for " + method + " " + path);
}

int port_from_env(int fallback) {
  const char* env = std::getenv("WOE_PORT");
  if (env == nullptr || *env == '\0') return fallback;
  const auto port = ParseCount(env);
  if (!port || *port > 65535) {
    throw InvalidArgument(std::string("WOE_PORT is not a valid port: ") + env);
  }
  return *port;
}

HttpServer::HttpServer(WoeService& service) : service_(service) {}

HttpServer::~HttpServer() { Stop(); }

void HttpServer::Configure(const ServerOptions& options) {
  server_ = std::make_unique<httplib::Server>();
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [key, value] : req.params) query[key] = value;
    const HttpResponse r = service_.Handle(req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  for (const char* path :
       {"/api/health", "/api/meta", "/api/instances", "/api/schema"}) {
    server_->Get(path, handler);
  }
  server_->Post("/api/explain", handler);
  if (!options.static_dir.empty() &&
      !server_->set_mount_point("/", options.static_dir)) {
    throw NotFound("static directory '" + options.static_dir +
                   "' does not exist");
  }
}

int HttpServer::Start(const ServerOptions& options) {
  Stop();
  Configure(options);
  int port = options.port;
  if (port == 0) {
    port = server_->bind_to_any_port(options.host);
  } else if (!server_->bind_to_port(options.host, port)) {
    port = -1;
  }
  if (port < 0) {
    throw Error("cannot bind " + options.host + ":" +
                std::to_string(options.port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port;
}

void HttpServer::Run(const ServerOptions& options) {
  Stop();
  Configure(options);
  if (!server_->bind_to_port(options.host, options.port)) {
    throw Error("cannot bind " + options.host + ":" +
                std::to_string(options.port));
  }
  server_->listen_after_bind();
}

void HttpServer::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace woe
