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

#ifndef WOE_SERVICE_H_
#define WOE_SERVICE_H_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "woe/dataset.h"
#include "woe/explainer.h"
#include "woe/models.h"
#include "woe/partition.h"
#include "woe/surrogate.h"

namespace httplib {
class Server;
}

namespace woe {

// Name of the partition with one atom per feature; always present.
inline constexpr const char* kSingletonPartition = "singletons";

// Everything a request needs. Built once at startup and never mutated, so
// handlers may share it across threads.
struct ServiceState {
  Dataset data;
  ModelHandle model;  // native, or a black box paired with `surrogate`
  std::optional<SurrogateModel> surrogate;
  std::map<std::string, FeaturePartition> partitions;
  ExplainerConfig defaults;
  std::vector<std::string> warnings;
};

// Checks that model, surrogate and dataset agree on feature names and that a
// black box comes with a surrogate; adds the singleton partition.
std::shared_ptr<const ServiceState> make_service_state(
    Dataset data, ModelHandle model, std::optional<SurrogateModel> surrogate,
    NamedPartitions partitions, ExplainerConfig defaults);

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// Transport-free request handlers. Errors come back as
// {"error": {"status", "message", "fields": [{"field", "message"}]}}.
class WoeService {
 public:
  explicit WoeService(std::shared_ptr<const ServiceState> state);

  std::shared_ptr<const ServiceState> state() const;
  // Replaces the state; in-flight requests finish on the old one.
  void Swap(std::shared_ptr<const ServiceState> state);

  HttpResponse Health() const;
  HttpResponse Meta() const;
  HttpResponse Instances(const std::map<std::string, std::string>& query) const;
  HttpResponse Explain(const std::string& body) const;
  HttpResponse Schema() const;

  // Routes by method and path; unknown routes give 404.
  HttpResponse Handle(const std::string& method, const std::string& path,
                      const std::map<std::string, std::string>& query,
                      const std::string& body) const;

 private:
  mutable std::mutex state_mutex_;
  std::shared_ptr<const ServiceState> state_;
  // Serializes calls into black boxes that are not thread safe.
  mutable std::mutex black_box_mutex_;
};

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::string static_dir;  // served at / when non-empty
};

// Port from the WOE_PORT environment variable, else `fallback`.
int port_from_env(int fallback);

// HTTP front end for WoeService.
class HttpServer {
 public:
  explicit HttpServer(WoeService& service);
  ~HttpServer();

  // Binds and serves on a background thread; returns the bound port.
  int Start(const ServerOptions& options);
  // Binds and serves on the calling thread until Stop() is called.
  void Run(const ServerOptions& options);
  void Stop();

 private:
  void Configure(const ServerOptions& options);

  WoeService& service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace woe

#endif  // WOE_SERVICE_H_
