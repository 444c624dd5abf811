/*
 Copyright 2026 The gmilearn Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "gmilearn/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gmilearn {

namespace {

using nlohmann::json;

const json* find_key(const json& root, const std::string& dotted) {
  if (auto it = root.find(dotted); it != root.end()) return &*it;
  const json* node = &root;
  std::size_t start = 0;
  while (start <= dotted.size()) {
    const std::size_t dot = dotted.find('.', start);
    const std::string part = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!node->is_object()) return nullptr;
    auto it = node->find(part);
    if (it == node->end()) return nullptr;
    node = &*it;
    if (dot == std::string::npos) return node;
    start = dot + 1;
  }
  return nullptr;
}

template <typename T>
T get_or(const json& root, const std::string& key, T fallback) {
  const json* v = find_key(root, key);
  if (!v) return fallback;
  try {
    return v->get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument("config: bad value for '" + key + "': " + e.what());
  }
}

std::vector<double> number_list(const json& root, const std::string& key) {
  const json* v = find_key(root, key);
  if (!v) return {};
  if (v->is_number()) return {v->get<double>()};
  if (!v->is_array()) throw std::invalid_argument("config: '" + key + "' must be a number array");
  std::vector<double> out;
  for (const auto& e : *v) {
    if (!e.is_number()) throw std::invalid_argument("config: '" + key + "' must be a number array");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw std::invalid_argument("config: top level must be an object");
  if (find_key(root, "b"))
    throw std::invalid_argument("config: dither biases 'b' are derived, not configured");

  ExperimentConfig cfg;
  const ChannelKind kind = parse_channel_kind(get_or<std::string>(root, "kind", "awgn"));
  const double sigma2 = get_or(root, "sigma2", 1.0);
  double P = get_or(root, "P", 100.0);
  const double alpha = get_or(root, "alpha", 0.0);
  std::vector<double> h_list = number_list(root, "h");
  if (kind == ChannelKind::awgn) h_list = {1.0};
  if (h_list.empty()) throw std::invalid_argument("config: 'h' is required for kind " +
                                                  std::string(to_string(kind)));
  const Eigen::VectorXd h = Eigen::Map<const Eigen::VectorXd>(h_list.data(),
                                                              static_cast<Eigen::Index>(h_list.size()));
  if (const json* snr = find_key(root, "snr_db"))
    P = std::pow(10.0, snr->get<double>() / 10.0) * sigma2 / h.squaredNorm();
  switch (kind) {
    case ChannelKind::awgn:
      cfg.channel = ChannelModel::awgn(P, sigma2);
      break;
    case ChannelKind::simo_linear:
      cfg.channel = ChannelModel::simo_linear(h, P, sigma2);
      break;
    case ChannelKind::simo_onebit:
      cfg.channel = ChannelModel::simo_onebit(h, P, sigma2);
      break;
    case ChannelKind::simo_onebit_dithered:
      cfg.channel = ChannelModel::simo_onebit_dithered(h, P, sigma2, alpha);
      break;
  }
  cfg.channel.alpha = alpha;

  cfg.L = get_or<std::size_t>(root, "train.L", cfg.L);
  cfg.Q = get_or<std::size_t>(root, "train.Q", cfg.Q);
  cfg.xi1 = get_or(root, "lfit.xi1", cfg.xi1);
  cfg.xi2 = get_or(root, "lfit.xi2", cfg.xi2);
  cfg.regressor.kind = parse_regressor_kind(get_or<std::string>(root, "regressor.kind", "ridge"));
  cfg.regressor.kernel = parse_kernel_kind(get_or<std::string>(root, "regressor.kernel", "gaussian"));
  const std::vector<double> lambdas = number_list(root, "regressor.lambda");
  if (lambdas.size() == 1) cfg.regressor.lambda = lambdas.front();
  if (lambdas.size() > 1) {
    cfg.lambda_grid = lambdas;
    cfg.regressor.lambda = lambdas.front();
  }
  cfg.trials = get_or<std::size_t>(root, "mc.trials", cfg.trials);
  cfg.seed = get_or<std::uint64_t>(root, "mc.seed", cfg.seed);
  cfg.eval_samples = get_or<std::size_t>(root, "eval.samples", cfg.eval_samples);
  const std::string method = get_or<std::string>(root, "eval.method", "exact");
  if (method == "exact")
    cfg.eval_method = EvalMethod::exact;
  else if (method == "monte_carlo")
    cfg.eval_method = EvalMethod::monte_carlo;
  else
    throw std::invalid_argument("config: eval.method must be 'exact' or 'monte_carlo'");
  cfg.quad_order = get_or(root, "quad.order", cfg.quad_order);
  if (cfg.quad_order < 2) throw std::invalid_argument("config: quad.order must be at least 2");
  cfg.clt_nu = get_or(root, "clt.nu", cfg.clt_nu);
  cfg.clt_target_poe = get_or(root, "clt.target_poe", cfg.clt_target_poe);
  cfg.sweep_snr_db = number_list(root, "sweep.snr_db");
  if (const json* kinds = find_key(root, "sweep.kinds")) {
    if (!kinds->is_array()) throw std::invalid_argument("config: 'sweep.kinds' must be an array");
    for (const auto& k : *kinds) cfg.sweep_kinds.push_back(parse_channel_kind(k.get<std::string>()));
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

}  // namespace gmilearn
