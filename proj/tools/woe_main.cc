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

// Command-line entry point: training, explanation, surrogate fitting,
// benchmarks and the HTTP service.
//
// Exit codes: 0 success, 1 runtime error, 2 usage error.

#include <csignal>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "woe/dataset.h"
#include "woe/error.h"
#include "woe/estimation_benchmark.h"
#include "woe/explainer.h"
#include "woe/explanation_json.h"
#include "woe/model_io.h"
#include "woe/models.h"
#include "woe/partition.h"
#include "woe/report_io.h"
#include "woe/robustness_benchmark.h"
#include "woe/service.h"
#include "woe/surrogate.h"
#include "woe/svg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Bad flag combinations that CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::ordered_json ReadOrderedJson(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw woe::NotFound("cannot open '" + path + "'");
  try {
    return nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw woe::InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<uint64_t> SeedRange(int n) {
  std::vector<uint64_t> seeds(n);
  std::iota(seeds.begin(), seeds.end(), uint64_t{0});
  return seeds;
}

void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    woe::write_text_file(path, text);
  }
}

woe::ModelHandle LoadBlackBox(const std::string& path) {
  const woe::ModelHandle inner = woe::load_model(path);
  return woe::ModelHandle(woe::as_black_box(inner, path), inner.class_names(),
                          inner.feature_names());
}

woe::SurrogateModel LoadSurrogate(const std::string& path) {
  return woe::surrogate_from_json(woe::read_json_file(path));
}

// Options shared by explain and serve.
struct ExplainFlags {
  std::string mode;
  std::optional<double> tau;
  std::string order;
  std::optional<uint64_t> seed;
  std::string subset_search;
  std::optional<double> reg_weight;
  std::optional<double> reg_exponent;

  void Add(CLI::App* cmd) {
    cmd->add_option("--mode", mode, "oneshot or sequential")
        ->check(CLI::IsMember({"oneshot", "sequential"}));
    cmd->add_option("--tau", tau, "salience threshold in nats")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--order", order, "atom order policy")
        ->check(CLI::IsMember({"given", "random", "by_abs_conditional_woe"}));
    cmd->add_option("--seed", seed, "seed for --order random");
    cmd->add_option("--search", subset_search, "hypothesis search")
        ->check(CLI::IsMember({"exhaustive", "greedy"}));
    cmd->add_option("--reg-weight", reg_weight, "regularization weight")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--reg-exponent", reg_exponent, "regularization exponent")
        ->check(CLI::PositiveNumber);
  }

  woe::ExplainerConfig Config() const {
    woe::ExplainerConfig c;
    if (!mode.empty()) c.mode = woe::parse_explain_mode(mode);
    if (tau) c.salience_threshold = *tau;
    if (!order.empty()) c.atom_order_policy = woe::parse_atom_order_policy(order);
    if (seed) c.seed = *seed;
    if (!subset_search.empty()) {
      c.subset_search = woe::parse_subset_search(subset_search);
    }
    if (reg_weight) c.reg_weight = *reg_weight;
    if (reg_exponent) c.reg_exponent = *reg_exponent;
    c.Validate();
    return c;
  }
};

int Train(const std::string& model_type, const std::string& data_path,
          const std::string& label, const std::string& out, double smoothing,
          bool uniform_priors) {
  const woe::Dataset data = woe::load_csv(data_path, label);
  woe::ModelHandle::Params params;
  if (model_type == "gnb") {
    params = woe::fit_gnb(data, {smoothing, uniform_priors});
  } else if (model_type == "logistic") {
    params = woe::fit_logistic(data);
  } else {
    woe::GaussianFullOptions options;
    options.shared_covariance = model_type == "lda";
    options.uniform_priors = uniform_priors;
    params = woe::fit_gaussian_full(data, options);
  }
  const woe::ModelHandle model = woe::make_handle(std::move(params), data);
  int correct = 0;
  for (int i = 0; i < data.num_rows(); ++i) {
    correct += woe::predict(model, data.row(i)) == data.label(i);
  }
  woe::save_model(model, out);
  std::cout << "model: " << model.type_name() << " (" << data.num_rows()
            << " rows, " << data.num_features() << " features, "
            << data.num_classes() << " classes)\n";
  std::cout << "training accuracy: "
            << static_cast<double>(correct) / data.num_rows() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weight-of-evidence explanations for probabilistic classifiers"};
  app.require_subcommand(1);

  // train
  std::string train_model, train_data, train_label = "label", train_out;
  double train_smoothing = 1e-9;
  bool train_uniform = false;
  auto* train = app.add_subcommand("train", "fit a native model on a CSV");
  train->add_option("--model", train_model, "gnb, logistic, lda or qda")
      ->required()
      ->check(CLI::IsMember({"gnb", "logistic", "lda", "qda"}));
  train->add_option("--data", train_data, "training CSV")->required();
  train->add_option("--label", train_label, "label column");
  train->add_option("--out", train_out, "model JSON to write")->required();
  train->add_option("--smoothing", train_smoothing, "GNB variance smoothing")
      ->check(CLI::NonNegativeNumber);
  train->add_flag("--uniform-priors", train_uniform, "use equal class priors");

  // explain
  std::string ex_model, ex_data, ex_label = "label", ex_instance,
      ex_partition_file, ex_partition_name, ex_out, ex_svg, ex_surrogate;
  std::optional<int> ex_row;
  ExplainFlags ex_flags;
  auto* explain_cmd = app.add_subcommand("explain", "explain one prediction");
  explain_cmd->add_option("--model", ex_model, "model JSON")->required();
  explain_cmd->add_option("--data", ex_data, "CSV holding --row");
  explain_cmd->add_option("--label", ex_label, "label column of --data");
  auto* row_opt = explain_cmd->add_option("--row", ex_row, "row index in --data")
                      ->check(CLI::NonNegativeNumber);
  auto* inst_opt = explain_cmd->add_option("--instance", ex_instance,
                                           "instance as a JSON array");
  row_opt->excludes(inst_opt);
  explain_cmd->add_option("--partition", ex_partition_file,
                          "partition file {name: {atom: [features]}}");
  explain_cmd->add_option("--partition-name", ex_partition_name,
                          "partition to use from --partition");
  explain_cmd->add_option("--surrogate", ex_surrogate,
                          "surrogate JSON; --model is then a black box");
  explain_cmd->add_option("--out", ex_out, "explanation JSON (default stdout)");
  explain_cmd->add_option("--svg", ex_svg, "write a bar chart here");
  ex_flags.Add(explain_cmd);

  // surrogate-fit
  std::string sf_model, sf_data, sf_label = "label", sf_out;
  double sf_smoothing = 1e-9;
  auto* sfit = app.add_subcommand(
      "surrogate-fit", "fit a GNB surrogate to a black box's predictions");
  sfit->add_option("--model", sf_model, "model JSON queried as a black box")
      ->required();
  sfit->add_option("--data", sf_data, "background CSV")->required();
  sfit->add_option("--label", sf_label, "label column (ignored for fitting)");
  sfit->add_option("--out", sf_out, "surrogate JSON to write")->required();
  sfit->add_option("--smoothing", sf_smoothing, "variance smoothing")
      ->check(CLI::NonNegativeNumber);

  // bench-estimation
  woe::EstimationConfig est;
  int est_seeds = 5;
  std::string est_csv, est_json, est_plot;
  auto* bench_est = app.add_subcommand(
      "bench-estimation", "surrogate WoE estimation error against N_fit");
  bench_est->add_option("--dims", est.dims, "feature dimensions")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench_est->add_option("--n-fits", est.n_fits, "surrogate fit sizes")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench_est->add_option("--n-train", est.n_train, "true-model training rows");
  bench_est->add_option("--n-test", est.n_test, "explained rows per cell");
  bench_est->add_option("--n-classes", est.n_classes, "classes");
  bench_est->add_option("--seeds", est_seeds, "seeds 0..N-1")
      ->check(CLI::PositiveNumber);
  bench_est->add_option("--csv", est_csv, "long-format CSV output");
  bench_est->add_option("--json", est_json, "JSON output");
  bench_est->add_option("--plot", est_plot, "SVG line charts");

  // bench-robustness
  woe::RobustnessConfig rob;
  int rob_dim = 10, rob_samples = 500, rob_seeds = 10;
  uint64_t rob_data_seed = 0;
  std::vector<int> rob_classes = {2, 4, 6};
  std::string rob_csv, rob_json, rob_plot;
  auto* bench_rob = app.add_subcommand(
      "bench-robustness", "local Lipschitz estimates of GNB WoE explanations");
  bench_rob->add_option("--dim", rob_dim, "feature dimension")
      ->check(CLI::PositiveNumber);
  bench_rob->add_option("--classes", rob_classes, "class counts, one dataset each")
      ->delimiter(',')
      ->check(CLI::Range(2, 64));
  bench_rob->add_option("--n-samples", rob_samples, "rows per dataset");
  bench_rob->add_option("--data-seed", rob_data_seed, "dataset generator seed");
  bench_rob->add_option("--epsilon", rob.epsilon,
                        "radius as a fraction of the mean feature range");
  bench_rob->add_option("--budget", rob.budget, "explanation evaluations");
  bench_rob->add_option("--refine-steps", rob.refine_steps,
                        "local refinement evaluations");
  bench_rob->add_option("--seeds", rob_seeds, "seeds 0..N-1")
      ->check(CLI::PositiveNumber);
  bench_rob->add_option("--n-instances", rob.n_instances,
                        "held-out rows per dataset");
  bench_rob->add_option("--csv", rob_csv, "long-format CSV output");
  bench_rob->add_option("--json", rob_json, "JSON output");
  bench_rob->add_option("--plot", rob_plot, "SVG box chart");

  // serve
  std::string sv_model, sv_data, sv_label = "label", sv_surrogate,
      sv_partitions, sv_static, sv_host = "127.0.0.1";
  std::optional<int> sv_port;
  ExplainFlags sv_flags;
  auto* serve = app.add_subcommand("serve", "run the HTTP explanation service");
  serve->add_option("--model", sv_model, "model JSON")->required();
  serve->add_option("--data", sv_data, "dataset CSV")->required();
  serve->add_option("--label", sv_label, "label column");
  serve->add_option("--surrogate", sv_surrogate,
                    "surrogate JSON; --model is then a black box");
  serve->add_option("--partitions", sv_partitions, "partition file");
  serve->add_option("--static-dir", sv_static, "UI files served at /");
  serve->add_option("--host", sv_host, "bind address");
  serve->add_option("--port", sv_port, "port (default $WOE_PORT or 8080)")
      ->check(CLI::Range(0, 65535));
  sv_flags.Add(serve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train) {
      return Train(train_model, train_data, train_label, train_out,
                   train_smoothing, train_uniform);
    }

    if (*explain_cmd) {
      const woe::ExplainerConfig config = ex_flags.Config();
      const woe::ModelHandle model =
          ex_surrogate.empty() ? woe::load_model(ex_model) : LoadBlackBox(ex_model);
      std::vector<double> x;
      if (ex_row) {
        if (ex_data.empty()) throw UsageError("--row needs --data");
        const woe::Dataset data = woe::load_csv(ex_data, ex_label);
        if (*ex_row >= data.num_rows()) {
          throw woe::NotFound("row " + std::to_string(*ex_row) +
                              " not found (" + std::to_string(data.num_rows()) +
                              " rows)");
        }
        const auto row = data.row(*ex_row);
        x.assign(row.begin(), row.end());
      } else if (!ex_instance.empty()) {
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(ex_instance);
          x = j.get<std::vector<double>>();
        } catch (const nlohmann::json::exception& e) {
          throw UsageError("--instance must be a JSON array of numbers");
        }
      } else {
        throw UsageError("one of --row or --instance is required");
      }
      if (static_cast<int>(x.size()) != model.num_features()) {
        throw woe::InvalidArgument(
            "instance has " + std::to_string(x.size()) +
            " values but the model expects " +
            std::to_string(model.num_features()));
      }

      std::optional<woe::FeaturePartition> partition;
      std::optional<std::string> partition_name;
      if (!ex_partition_file.empty()) {
        woe::NamedPartitions named = woe::partitions_from_json(
            ReadOrderedJson(ex_partition_file), model.feature_names());
        for (const auto& w : named.warnings) std::cerr << "warning: " << w << "\n";
        if (ex_partition_name.empty()) {
          if (named.partitions.size() != 1) {
            throw UsageError("--partition-name is required when the file holds " +
                             std::to_string(named.partitions.size()) +
                             " partitions");
          }
          ex_partition_name = named.partitions.begin()->first;
        }
        const auto it = named.partitions.find(ex_partition_name);
        if (it == named.partitions.end()) {
          throw woe::NotFound("partition '" + ex_partition_name + "' not in " +
                              ex_partition_file);
        }
        partition = it->second;
        partition_name = ex_partition_name;
      } else if (!ex_partition_name.empty() &&
                 ex_partition_name != woe::kSingletonPartition) {
        throw UsageError("--partition-name needs --partition");
      } else {
        partition = woe::FeaturePartition::Singletons(model.feature_names());
        partition_name = woe::kSingletonPartition;
      }

      woe::Explanation explanation =
          ex_surrogate.empty()
              ? woe::explain(model, x, *partition, config)
              : woe::explain_black_box(model, LoadSurrogate(ex_surrogate), x,
                                       *partition, config);
      Emit(ex_out,
           woe::explanation_to_json(explanation, partition_name).dump(2) + "\n");
      if (!ex_svg.empty()) {
        woe::write_text_file(ex_svg, woe::render_explanation_svg(explanation));
      }
      return kExitOk;
    }

    if (*sfit) {
      const woe::ModelHandle box = LoadBlackBox(sf_model);
      const woe::Dataset data = woe::load_csv(sf_data, sf_label);
      if (data.feature_names() != box.feature_names()) {
        throw woe::InvalidArgument("background CSV features differ from the model's");
      }
      const woe::SurrogateModel s =
          woe::fit_surrogate(box, data.features(), sf_smoothing);
      for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
      woe::write_json_file(woe::surrogate_to_json(s, box.class_names()), sf_out);
      std::cout << "surrogate fitted on " << s.n_fit << " rows, "
                << s.class_names.size() << " classes\n";
      return kExitOk;
    }

    if (*bench_est) {
      est.seeds = SeedRange(est_seeds);
      const woe::EstimationReport report = woe::run_estimation_benchmark(est);
      for (int d : est.dims) {
        for (int n : est.n_fits) {
          std::cout << "d=" << d << " n_fit=" << n
                    << " mse=" << report.MeanMse(d, n)
                    << " ndcg=" << report.MeanNdcg(d, n) << "\n";
        }
      }
      if (!est_csv.empty()) Emit(est_csv, woe::estimation_to_csv(report));
      if (!est_json.empty()) {
        Emit(est_json, woe::estimation_to_json(est, report).dump(2) + "\n");
      }
      if (!est_plot.empty()) Emit(est_plot, woe::estimation_to_svg(report));
      return kExitOk;
    }

    if (*bench_rob) {
      rob.seeds = SeedRange(rob_seeds);
      const auto datasets = woe::synthetic_robustness_datasets(
          rob_dim, rob_classes, rob_samples, rob_data_seed);
      const woe::RobustnessReport report =
          woe::run_robustness_benchmark(datasets, rob);
      for (const auto& s : report.summaries) {
        std::cout << s.dataset << ": n=" << s.count << " median=" << s.median
                  << " q25=" << s.q25 << " q75=" << s.q75 << " max=" << s.max
                  << " below_one=" << s.fraction_below_one << "\n";
      }
      if (!rob_csv.empty()) Emit(rob_csv, woe::robustness_to_csv(report));
      if (!rob_json.empty()) {
        Emit(rob_json, woe::robustness_to_json(rob, report).dump(2) + "\n");
      }
      if (!rob_plot.empty()) Emit(rob_plot, woe::robustness_to_svg(report));
      return kExitOk;
    }

    if (*serve) {
      const woe::ExplainerConfig config = sv_flags.Config();
      woe::Dataset data = woe::load_csv(sv_data, sv_label);
      std::optional<woe::SurrogateModel> surrogate;
      woe::ModelHandle model = sv_surrogate.empty() ? woe::load_model(sv_model)
                                                    : LoadBlackBox(sv_model);
      if (!sv_surrogate.empty()) surrogate = LoadSurrogate(sv_surrogate);
      woe::NamedPartitions partitions;
      if (!sv_partitions.empty()) {
        partitions = woe::partitions_from_json(ReadOrderedJson(sv_partitions),
                                               data.feature_names());
      }
      for (const auto& w : partitions.warnings) {
        std::cerr << "warning: " << w << "\n";
      }
      woe::WoeService service(woe::make_service_state(
          std::move(data), std::move(model), std::move(surrogate),
          std::move(partitions), config));
      woe::ServerOptions options;
      options.host = sv_host;
      options.port = sv_port ? *sv_port : woe::port_from_env(8080);
      options.static_dir = sv_static;
      woe::HttpServer server(service);
      std::cerr << "serving on http://" << options.host << ":" << options.port
                << "\n";
      server.Run(options);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
