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

// gmilearn: GMI sweeps and learning-rate experiments from the command line.
//
//   gmilearn gmi-sweep  --config sweep.json --out gmi.csv
//   gmilearn lfit-eval  --config exp.json --lambda-grid 0,50,100 --out lambda.csv
//   gmilearn awgn-demo  --out awgn.csv
//   gmilearn clt-rate   --config clt.json [--out trials.csv]
//
// GMILEARN_WORKERS sets the number of worker threads.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmilearn/config.hpp"
#include "gmilearn/errors.hpp"
#include "gmilearn/gmi.hpp"
#include "gmilearn/harness.hpp"

using namespace gmilearn;

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "' in list");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open '" + path + "' for writing");
  return os;
}

int cmd_gmi_sweep(const std::string& config_path, const std::string& out_path) {
  const ExperimentConfig cfg = load_experiment_config(config_path);
  std::vector<double> snrs = cfg.sweep_snr_db;
  if (snrs.empty())
    for (int s = 0; s <= 40; s += 5) snrs.push_back(s);
  std::vector<ChannelKind> kinds = cfg.sweep_kinds;
  if (kinds.empty())
    kinds = {ChannelKind::simo_linear, ChannelKind::simo_onebit, ChannelKind::simo_onebit_dithered};
  const auto rows = gmi_sweep(cfg.channel, kinds, snrs, cfg.quad_order);
  auto os = open_out(out_path);
  write_sweep_csv(os, rows);
  return 0;
}

int cmd_lfit_eval(const std::string& config_path, const std::string& grid,
                  const std::string& out_path) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  if (!grid.empty()) {
    cfg.lambda_grid = parse_list(grid);
    cfg.regressor.lambda = cfg.lambda_grid.front();
  }
  const auto rows = lambda_sweep(cfg, worker_count_from_env());
  auto os = open_out(out_path);
  write_lambda_csv(os, rows);
  return 0;
}

ExperimentConfig awgn_demo_defaults() {
  ExperimentConfig cfg;
  cfg.channel = ChannelModel::awgn(100.0, 1.0);
  cfg.L = 800;
  cfg.Q = 5;
  cfg.xi1 = 1.002;
  cfg.xi2 = 0.998;
  cfg.regressor = {RegressorKind::ridge, 0.0, KernelKind::gaussian};
  cfg.trials = 2000;
  return cfg;
}

int cmd_awgn_demo(const std::string& config_path, std::size_t trials,
                  const std::string& out_path) {
  ExperimentConfig cfg = config_path.empty() ? awgn_demo_defaults()
                                             : load_experiment_config(config_path);
  if (trials > 0) cfg.trials = trials;
  const Experiment exp(cfg);
  const auto records = exp.run_trials(worker_count_from_env());
  auto os = open_out(out_path);
  write_awgn_demo_csv(os, records);
  std::printf("trials=%zu p_oe_pct=%s\n", records.size(),
              format_number(100.0 * over_estimation_probability(records)).c_str());
  return 0;
}

int cmd_clt_rate(const std::string& config_path, const std::string& out_path) {
  const ExperimentConfig cfg = load_experiment_config(config_path);
  const Experiment exp(cfg);
  const auto records = exp.run_trials(worker_count_from_env(), /*clt=*/true);
  double mean_rate = 0.0;
  for (const auto& r : records) mean_rate += r.r_t;
  mean_rate /= static_cast<double>(records.size());
  std::printf("trials=%zu over_estimation_pct=%s mean_rate_bits=%s i_mmse_bits=%s\n",
              records.size(), format_number(100.0 * over_estimation_probability(records)).c_str(),
              format_number(nats_to_bits(mean_rate)).c_str(),
              format_number(nats_to_bits(exp.i_mmse())).c_str());
  if (!out_path.empty()) {
    auto os = open_out(out_path);
    write_trials_csv(os, records);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GMI analysis and learning-based rate selection for nearest neighbor decoding"};
  app.require_subcommand(1);

  std::string config, out, grid;
  std::size_t trials = 0;

  auto* sweep = app.add_subcommand("gmi-sweep", "LMMSE and MMSE GMIs over an SNR grid");
  sweep->add_option("--config", config, "JSON config")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out, "output CSV")->required();

  auto* lfit = app.add_subcommand("lfit-eval", "over-estimation probability and receding level per lambda");
  lfit->add_option("--config", config, "JSON config")->required()->check(CLI::ExistingFile);
  lfit->add_option("--lambda-grid", grid, "comma-separated lambda values");
  lfit->add_option("--out", out, "output CSV")->required();

  auto* demo = app.add_subcommand("awgn-demo", "rate CDFs for the AWGN example");
  demo->add_option("--config", config, "JSON config overriding the demo defaults")
      ->check(CLI::ExistingFile);
  demo->add_option("--trials", trials, "number of Monte Carlo trials");
  demo->add_option("--out", out, "output CSV")->required();

  auto* clt = app.add_subcommand("clt-rate", "rate with the CLT over-estimation guarantee");
  clt->add_option("--config", config, "JSON config")->required()->check(CLI::ExistingFile);
  clt->add_option("--out", out, "per-trial CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return cmd_gmi_sweep(config, out);
    if (lfit->parsed()) return cmd_lfit_eval(config, grid, out);
    if (demo->parsed()) return cmd_awgn_demo(config, trials, out);
    if (clt->parsed()) return cmd_clt_rate(config, out);
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
