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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "gmilearn/channel.hpp"
#include "gmilearn/estimator.hpp"
#include "gmilearn/lfit.hpp"
#include "gmilearn/regress.hpp"

namespace gmilearn {

/// How the true moments of a learned predictor are evaluated.
enum class EvalMethod {
  /// Closed form or pattern enumeration when available, Monte Carlo otherwise.
  exact,
  /// Always fresh Monte Carlo with eval_samples draws.
  monte_carlo,
};

struct ExperimentConfig {
  ChannelModel channel = ChannelModel::awgn(100.0, 1.0);
  std::size_t L = 800;
  std::size_t Q = 5;
  double xi1 = 1.002;
  double xi2 = 0.998;
  RegressorSpec regressor;
  std::vector<double> lambda_grid;
  std::size_t trials = 2000;
  std::uint64_t seed = 20260101;
  std::size_t eval_samples = 100'000;
  EvalMethod eval_method = EvalMethod::exact;
  int quad_order = kDefaultQuadOrder;
  double clt_nu = 0.5;
  double clt_target_poe = 0.05;
  std::vector<double> sweep_snr_db;
  std::vector<ChannelKind> sweep_kinds;

  LfitConfig lfit() const;
  CltRateConfig clt() const;
  void validate() const;
};

struct TrialRecord {
  double r_t = 0.0;  ///< learned rate, nats
  double i_a = 0.0;  ///< GMI with the learned scaling, nats
  double i_b = 0.0;  ///< GMI with the optimal scaling for g_T, nats
  double a_t = 0.0;
  std::uint64_t seed = 0;
};

/// Per-trial seed: splitmix64 finalizer applied to base + (index + 1) * golden gamma.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index);

/// Runs trials for one configuration. Model-dependent tables (pattern
/// posteriors, the MMSE reference) are built once at construction and shared
/// read-only across worker threads.
class Experiment {
 public:
  explicit Experiment(ExperimentConfig cfg);

  const ExperimentConfig& config() const { return cfg_; }
  double i_mmse() const { return i_mmse_; }

  /// LFIT trial. Same (config, index) gives a bit-identical record.
  TrialRecord run_trial(std::size_t index) const;
  /// Trial of the CLT-guaranteed rate path instead of LFIT.
  TrialRecord run_clt_trial(std::size_t index) const;

  /// Runs indices [0, trials) on `workers` threads; results are in index order.
  std::vector<TrialRecord> run_trials(std::size_t workers = 1, bool clt = false) const;

  /// True moments of g under x ~ N(0, P), by the configured evaluation method.
  MomentPair true_moments(const Predictor& g, std::uint64_t seed) const;

 private:
  TrialRecord score(const Predictor& g, double a, double rate, std::uint64_t seed) const;

  ExperimentConfig cfg_;
  std::shared_ptr<const std::vector<PatternPosterior>> patterns_;
  double i_mmse_ = 0.0;
};

TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t trial_index);

double over_estimation_probability(std::span<const TrialRecord> records);

enum class Scenario { A, B };

/// Scenario A: 1 - E[r_t | i_a >= r_t] / i_mmse. Scenario B: 1 - E[i_b] / i_mmse.
/// Throws NumericError(no_valid_trials) if every trial over-estimates (A).
double receding_level(std::span<const TrialRecord> records, double i_mmse, Scenario scenario);

/// Empirical CDF at the distinct sorted sample values.
std::vector<std::pair<double, double>> cdf_export(std::vector<double> values);

struct SweepRow {
  ChannelKind kind = ChannelKind::simo_linear;
  double snr_db = 0.0;
  double gmi_lmmse = 0.0;  ///< nats
  double gmi_mmse = 0.0;   ///< nats
};

/// For every kind and SNR: rescale P to the SNR (re-deriving dither biases)
/// and evaluate the LMMSE and MMSE GMIs. `base` supplies h, sigma2 and alpha.
std::vector<SweepRow> gmi_sweep(const ChannelModel& base, std::span<const ChannelKind> kinds,
                                std::span<const double> snr_db, int quad_order = kDefaultQuadOrder);

struct LambdaRow {
  double lambda = 0.0;
  double p_oe = 0.0;
  double l_r = 0.0;
  std::size_t trials = 0;
};

std::vector<LambdaRow> lambda_sweep(const ExperimentConfig& cfg, std::size_t workers);

/// 6 significant digits, '.' separator.
std::string format_number(double v);

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);
void write_lambda_csv(std::ostream& os, std::span<const LambdaRow> rows);
void write_trials_csv(std::ostream& os, std::span<const TrialRecord> records);
/// Series rows: series,value,cdf.
void write_awgn_demo_csv(std::ostream& os, std::span<const TrialRecord> records);

/// Worker count from GMILEARN_WORKERS, defaulting to the hardware concurrency.
std::size_t worker_count_from_env();

}  // namespace gmilearn
