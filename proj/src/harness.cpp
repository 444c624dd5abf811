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

#include "gmilearn/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "gmilearn/errors.hpp"
#include "gmilearn/gmi.hpp"

namespace gmilearn {

LfitConfig ExperimentConfig::lfit() const {
  LfitConfig c;
  c.Q = Q;
  c.xi1 = xi1;
  c.xi2 = xi2;
  c.regressor = regressor;
  return c;
}

CltRateConfig ExperimentConfig::clt() const {
  CltRateConfig c;
  c.nu = clt_nu;
  c.target_poe = clt_target_poe;
  c.regressor = regressor;
  c.P = channel.P;
  return c;
}

void ExperimentConfig::validate() const {
  channel.validate();
  if (L < 1 || trials < 1 || eval_samples < 1)
    throw std::invalid_argument("config: L, mc.trials and eval.samples must be at least 1");
  if (Q > L) throw std::invalid_argument("config: train.Q exceeds train.L");
  lfit().validate();
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Experiment::Experiment(ExperimentConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  const MmseEstimator mmse(cfg_.channel, cfg_.quad_order);
  if (cfg_.channel.quantized() && cfg_.channel.dim() <= kMaxEnumerationDim) {
    patterns_ = std::make_shared<const std::vector<PatternPosterior>>(mmse.integrator()->enumerate());
    double var = 0.0;
    for (const auto& pat : *patterns_) var += pat.probability * pat.mean * pat.mean;
    i_mmse_ = gmi_from_delta(var / cfg_.channel.P);
  } else {
    i_mmse_ = gmi_from_delta(mmse.variance() / cfg_.channel.P);
  }
}

MomentPair Experiment::true_moments(const Predictor& g, std::uint64_t seed) const {
  MomentPair m;
  if (cfg_.eval_method == EvalMethod::exact && exact_moments(cfg_.channel, g, m, patterns_.get()))
    return m;
  Rng rng(seed);
  return delta_of_predictor(cfg_.channel, g, std::max<std::size_t>(cfg_.eval_samples, 1000), rng)
      .moments;
}

TrialRecord Experiment::score(const Predictor& g, double a, double rate, std::uint64_t seed) const {
  TrialRecord rec;
  rec.seed = seed;
  rec.r_t = rate;
  rec.a_t = a;
  const MomentPair m = true_moments(g, trial_seed(seed, 1));
  rec.i_b = gmi_scenario_B(m).gmi_nats;
  rec.i_a = a != 0.0 ? gmi_scenario_A(m, a).gmi_nats : 0.0;
  return rec;
}

TrialRecord Experiment::run_trial(std::size_t index) const {
  const std::uint64_t seed = trial_seed(cfg_.seed, index);
  Rng rng(seed);
  const TrainingSet t = draw_training_set(cfg_.channel, cfg_.L, rng);
  const LfitOutput out = lfit_run(t, cfg_.lfit());
  return score(out.g, out.a, out.rate, seed);
}

TrialRecord Experiment::run_clt_trial(std::size_t index) const {
  const std::uint64_t seed = trial_seed(cfg_.seed, index);
  Rng rng(seed);
  const TrainingSet t = draw_training_set(cfg_.channel, cfg_.L, rng);
  const CltRateOutput out = clt_rate(t, cfg_.clt());
  return score(out.g, out.a, out.rate, seed);
}

std::vector<TrialRecord> Experiment::run_trials(std::size_t workers, bool clt) const {
  std::vector<TrialRecord> records(cfg_.trials);
  workers = std::clamp<std::size_t>(workers, 1, cfg_.trials);
  auto body = [&](std::size_t w) {
    for (std::size_t i = w; i < cfg_.trials; i += workers)
      records[i] = clt ? run_clt_trial(i) : run_trial(i);
  };
  if (workers == 1) {
    body(0);
    return records;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        body(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return records;
}

TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t trial_index) {
  return Experiment(cfg).run_trial(trial_index);
}

double over_estimation_probability(std::span<const TrialRecord> records) {
  if (records.empty()) throw std::invalid_argument("over_estimation_probability: no records");
  const auto over = std::count_if(records.begin(), records.end(),
                                  [](const TrialRecord& r) { return r.r_t > r.i_a; });
  return static_cast<double>(over) / static_cast<double>(records.size());
}

double receding_level(std::span<const TrialRecord> records, double i_mmse, Scenario scenario) {
  if (!(i_mmse > 0.0)) throw std::invalid_argument("receding_level: i_mmse must be positive");
  if (records.empty()) throw std::invalid_argument("receding_level: no records");
  double acc = 0.0;
  std::size_t n = 0;
  for (const auto& r : records) {
    if (scenario == Scenario::B) {
      acc += r.i_b;
      ++n;
    } else if (r.i_a - r.r_t >= 0.0) {
      acc += r.r_t;
      ++n;
    }
  }
  if (n == 0)
    throw NumericError(NumericErrc::no_valid_trials, "receding_level: every trial over-estimates");
  return 1.0 - acc / static_cast<double>(n) / i_mmse;
}

std::vector<std::pair<double, double>> cdf_export(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("cdf_export: no values");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    out.emplace_back(values[i], static_cast<double>(i + 1) / n);
  }
  return out;
}

std::vector<SweepRow> gmi_sweep(const ChannelModel& base, std::span<const ChannelKind> kinds,
                                std::span<const double> snr_db, int quad_order) {
  std::vector<SweepRow> rows;
  for (ChannelKind kind : kinds) {
    ChannelModel family;
    switch (kind) {
      case ChannelKind::awgn:
        family = ChannelModel::awgn(base.P, base.sigma2);
        break;
      case ChannelKind::simo_linear:
        family = ChannelModel::simo_linear(base.h, base.P, base.sigma2);
        break;
      case ChannelKind::simo_onebit:
        family = ChannelModel::simo_onebit(base.h, base.P, base.sigma2);
        break;
      case ChannelKind::simo_onebit_dithered:
        family = ChannelModel::simo_onebit_dithered(base.h, base.P, base.sigma2, base.alpha);
        break;
    }
    for (double snr : snr_db) {
      const ChannelModel m = family.with_snr_db(snr);
      MomentOracle oracle;
      oracle.quad_order = quad_order;
      rows.push_back({kind, snr, gmi_lmmse(m, oracle).gmi_nats, gmi_mmse(m, quad_order).gmi_nats});
    }
  }
  return rows;
}

std::vector<LambdaRow> lambda_sweep(const ExperimentConfig& cfg, std::size_t workers) {
  std::vector<double> grid = cfg.lambda_grid;
  if (grid.empty()) grid.push_back(cfg.regressor.lambda);
  std::vector<LambdaRow> rows;
  for (double lambda : grid) {
    ExperimentConfig c = cfg;
    c.regressor.lambda = lambda;
    const Experiment exp(c);
    const auto records = exp.run_trials(workers);
    rows.push_back({lambda, over_estimation_probability(records),
                    receding_level(records, exp.i_mmse(), Scenario::A), records.size()});
  }
  return rows;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << "kind,snr_db,gmi_lmmse_nats,gmi_mmse_nats,gmi_lmmse_bits,gmi_mmse_bits\n";
  for (const auto& r : rows) {
    os << to_string(r.kind) << ',' << format_number(r.snr_db) << ',' << format_number(r.gmi_lmmse)
       << ',' << format_number(r.gmi_mmse) << ',' << format_number(nats_to_bits(r.gmi_lmmse))
       << ',' << format_number(nats_to_bits(r.gmi_mmse)) << '\n';
  }
}

void write_lambda_csv(std::ostream& os, std::span<const LambdaRow> rows) {
  os << "lambda,p_oe_pct,l_r_pct,trials\n";
  for (const auto& r : rows) {
    os << format_number(r.lambda) << ',' << format_number(100.0 * r.p_oe) << ','
       << format_number(100.0 * r.l_r) << ',' << r.trials << '\n';
  }
}

void write_trials_csv(std::ostream& os, std::span<const TrialRecord> records) {
  os << "trial,r_t_nats,i_a_nats,i_b_nats,a_t\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    os << i << ',' << format_number(r.r_t) << ',' << format_number(r.i_a) << ','
       << format_number(r.i_b) << ',' << format_number(r.a_t) << '\n';
  }
}

void write_awgn_demo_csv(std::ostream& os, std::span<const TrialRecord> records) {
  auto emit = [&](const char* name, std::vector<double> values) {
    for (const auto& [v, f] : cdf_export(std::move(values)))
      os << name << ',' << format_number(v) << ',' << format_number(f) << '\n';
  };
  std::vector<double> r_t, i_a, i_b, gap;
  for (const auto& r : records) {
    r_t.push_back(nats_to_bits(r.r_t));
    i_a.push_back(nats_to_bits(r.i_a));
    i_b.push_back(nats_to_bits(r.i_b));
    gap.push_back(nats_to_bits(r.i_a - r.r_t));
  }
  os << "series,value_bits,cdf\n";
  emit("r_t", std::move(r_t));
  emit("i_a", std::move(i_a));
  emit("i_b", std::move(i_b));
  emit("i_a_minus_r_t", std::move(gap));
}

std::size_t worker_count_from_env() {
  if (const char* env = std::getenv("GMILEARN_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace gmilearn
