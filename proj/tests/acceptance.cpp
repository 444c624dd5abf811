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

// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--only N[,N...]] [property-test-binary ...]
//
// The property-test binaries given on the command line are run for
// criterion 12. GMILEARN_WORKERS controls the trial thread count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gmilearn/channel.hpp"
#include "gmilearn/estimator.hpp"
#include "gmilearn/gmi.hpp"
#include "gmilearn/harness.hpp"

using namespace gmilearn;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

ExperimentConfig table_config(ChannelModel channel) {
  ExperimentConfig cfg;
  cfg.channel = std::move(channel);
  cfg.L = 800;
  cfg.Q = 5;
  cfg.trials = 2000;
  return cfg;
}

Outcome c1_capacity() {
  const ChannelModel base = ChannelModel::simo_linear(reference_h8(), 100.0, 1.0);
  std::vector<double> snrs;
  for (int s = -10; s <= 40; s += 5) snrs.push_back(s);
  const std::vector<ChannelKind> kinds{ChannelKind::simo_linear};
  double worst = 0.0;
  for (const auto& row : gmi_sweep(base, kinds, snrs)) {
    const double cap = 0.5 * std::log1p(std::pow(10.0, row.snr_db / 10.0));
    worst = std::max({worst, std::abs(row.gmi_lmmse - cap), std::abs(row.gmi_mmse - cap)});
  }
  return {worst <= 1e-9, fmt("max |gmi - capacity| = %.3g nats", worst)};
}

Outcome c2_onebit_scalar() {
  const Eigen::VectorXd h = Eigen::VectorXd::Ones(1);
  const ChannelModel m = ChannelModel::simo_onebit(h, 100.0, 1.0);
  const double closed = 2.0 / std::numbers::pi * 100.0 / 101.0;
  const double d_lmmse = gmi_lmmse(m).delta;
  const double d_mmse = var_conditional_mean(m) / m.P;
  const bool ok = std::abs(d_lmmse - closed) <= 1e-6 && std::abs(d_mmse - 0.6303) <= 1e-4;
  return {ok, fmt("delta_lmmse err %.3g, delta_mmse %.6f", std::abs(d_lmmse - closed), d_mmse)};
}

Outcome c3_bussgang() {
  Rng rng(3);
  std::uniform_real_distribution<double> snr_db(-10.0, 30.0);
  std::uniform_real_distribution<double> gain(0.2, 3.0);
  std::uniform_real_distribution<double> alpha(0.2, 2.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd h(1);
    h[0] = gain(rng) * (k % 2 ? -1.0 : 1.0);
    const double sigma2 = gain(rng);
    ChannelModel m;
    switch (k % 3) {
      case 0: m = ChannelModel::simo_linear(h, 1.0, sigma2); break;
      case 1: m = ChannelModel::simo_onebit(h, 1.0, sigma2); break;
      default: m = ChannelModel::simo_onebit_dithered(h, 1.0, sigma2, alpha(rng)); break;
    }
    m = m.with_snr_db(snr_db(rng));
    const double lhs = 0.5 * std::log1p(bussgang_snr(m));
    worst = std::max(worst, std::abs(lhs - gmi_lmmse(m).gmi_nats));
  }
  return {worst <= 1e-9, fmt("max deviation %.3g nats over 20 models", worst)};
}

MomentPair random_moments(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> logscale(-3.0, 3.0);
  MomentPair m;
  m.p_hat = std::pow(10.0, logscale(rng));
  m.e_g2 = std::pow(10.0, logscale(rng));
  // Delta spread over (0, 0.999).
  const double delta = 0.001 + 0.998 * unit(rng);
  m.e_xg = (unit(rng) < 0.5 ? -1.0 : 1.0) * std::sqrt(delta * m.p_hat * m.e_g2);
  return m;
}

Outcome c4_gamma_identity() {
  Rng rng(4);
  double worst_gap = 0.0;
  double worst_rel = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const MomentPair m = random_moments(rng);
    const double a = optimal_scaling(m);
    const GmiResult A = gmi_scenario_A(m, a);
    const GmiResult B = gmi_scenario_B(m);
    const double target = B.delta / (1.0 - B.delta);
    worst_gap = std::max(worst_gap, std::abs(A.gmi_nats - B.gmi_nats));
    worst_rel = std::max(worst_rel, std::abs(A.gamma_opt - target) / target);
  }
  double worst_grid = 0.0;
  std::uniform_real_distribution<double> qd(0.01, 5.0);
  std::uniform_real_distribution<double> ld(0.05, 3.0);
  for (int k = 0; k < 20; ++k) {
    const double quad = qd(rng);
    const double lin = std::min(ld(rng), quad + 0.45);
    const RateMaximum best = maximize_rate_objective(quad, lin);
    // Grid over [0, 4 gamma* + 1] with 10^6 points.
    const double hi = 4.0 * best.gamma + 1.0;
    double grid_best = 0.0;
    for (int i = 0; i <= 1'000'000; ++i)
      grid_best = std::max(grid_best, rate_objective(hi * i / 1e6, quad, lin));
    worst_grid = std::max(worst_grid, std::abs(best.value - grid_best));
  }
  const bool ok = worst_gap < 1e-8 && worst_rel < 1e-6 && worst_grid < 1e-7;
  std::ostringstream os;
  os << "|I_A - I_B| " << worst_gap << ", gamma rel err " << worst_rel << ", grid gap "
     << worst_grid;
  return {ok, os.str()};
}

Outcome c5_corollary() {
  Rng rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t violations = 0;
  std::size_t tested = 0;
  while (tested < 1000) {
    const MomentPair m = random_moments(rng);
    const double a_opt = optimal_scaling(m);
    const double a = a_opt * (0.5 + unit(rng));
    const double dA = a * m.e_xg / m.e_g2;
    if (!(dA > 0.0 && dA < 1.0)) continue;
    ++tested;
    const double iA = gmi_scenario_A(m, a).gmi_nats;
    const double iB = gmi_scenario_B(m).gmi_nats;
    const double lb = lower_bound_A(dA, m.delta());
    if (lb > iA + 1e-10 || iA > iB + 1e-10) ++violations;
  }
  // Quadratic gap in the scaling error.
  MomentPair m{0.9, 1.0, 1.0};
  const double a_opt = optimal_scaling(m);
  const double iB = gmi_scenario_B(m).gmi_nats;
  auto gap = [&](double eps) { return iB - gmi_scenario_A(m, a_opt * (1.0 + eps)).gmi_nats; };
  const double r1 = gap(0.02) / gap(0.01);
  const double r2 = gap(0.04) / gap(0.02);
  const bool ok = violations == 0 && r1 >= 3.5 && r1 <= 4.5 && r2 >= 3.5 && r2 <= 4.5;
  std::ostringstream os;
  os << violations << " ordering violations in 1000, gap ratios " << r1 << ", " << r2;
  return {ok, os.str()};
}

Outcome c6_snr_shape() {
  const Eigen::VectorXd h = reference_h8();
  const std::vector<double> snrs{20, 25, 30, 35, 40};
  const ChannelModel base = ChannelModel::simo_onebit_dithered(h, 100.0, 1.0, 1.34);
  const std::vector<ChannelKind> kinds{ChannelKind::simo_onebit, ChannelKind::simo_onebit_dithered};
  const auto rows = gmi_sweep(base, kinds, snrs);
  const std::size_t n = snrs.size();
  bool ok = true;
  std::ostringstream os;
  const auto& plain20 = rows[0];
  const auto& plain40 = rows[n - 1];
  ok &= plain40.gmi_lmmse < plain20.gmi_lmmse && plain40.gmi_mmse < plain20.gmi_mmse;
  os << "plain mmse 20dB " << nats_to_bits(plain20.gmi_mmse) << " b, 40dB "
     << nats_to_bits(plain40.gmi_mmse) << " b";
  double min_margin = 1e9;
  for (std::size_t i = 0; i < n; ++i) {
    min_margin = std::min({min_margin, rows[n + i].gmi_lmmse - rows[i].gmi_lmmse,
                           rows[n + i].gmi_mmse - rows[i].gmi_mmse});
  }
  ok &= min_margin > 0.0;
  os << "; min dithered margin " << nats_to_bits(min_margin) << " b";
  return {ok, os.str()};
}

Outcome c7_awgn_demo() {
  ExperimentConfig cfg = table_config(ChannelModel::awgn(100.0, 1.0));
  cfg.xi1 = 1.002;
  cfg.xi2 = 0.998;
  const Experiment exp(cfg);
  const auto rec = exp.run_trials(worker_count_from_env());
  const double poe = over_estimation_probability(rec);
  std::vector<double> rates;
  for (const auto& r : rec) rates.push_back(nats_to_bits(r.r_t));
  const double med = median(rates);
  const bool ok = poe >= 0.015 && poe <= 0.055 && std::abs(med - 3.33) <= 0.15;
  return {ok, fmt("P_oe %.2f%%, median R_T %.4f bits", 100.0 * poe, med)};
}

Outcome c8_table2() {
  const Eigen::VectorXd h = reference_h8();
  ExperimentConfig lin = table_config(ChannelModel::simo_linear(h, 100.0, 1.0));
  lin.xi1 = 1.002;
  lin.xi2 = 0.998;
  const Experiment e1(lin);
  const auto r1 = e1.run_trials(worker_count_from_env());
  const double poe1 = over_estimation_probability(r1);
  const double lr1 = receding_level(r1, e1.i_mmse(), Scenario::A);

  ExperimentConfig dit = table_config(ChannelModel::simo_onebit_dithered(h, 100.0, 1.0, 1.34));
  dit.xi1 = 1.003;
  dit.xi2 = 0.987;
  dit.regressor.lambda = 100.0;
  const Experiment e2(dit);
  const auto r2 = e2.run_trials(worker_count_from_env());
  const double poe2 = over_estimation_probability(r2);
  const double lr2 = receding_level(r2, e2.i_mmse(), Scenario::A);

  const bool ok = std::abs(100.0 * poe1 - 1.27) <= 0.9 && std::abs(100.0 * lr1 - 18.85) <= 2.5 &&
                  100.0 * poe2 <= 1.5 && std::abs(100.0 * lr2 - 15.03) <= 3.0;
  return {ok, fmt("linear P_oe %.2f%% L_r %.2f%%", 100.0 * poe1, 100.0 * lr1) +
                  fmt("; dithered P_oe %.2f%% L_r %.2f%%", 100.0 * poe2, 100.0 * lr2)};
}

Outcome c9_table3() {
  ExperimentConfig cfg = table_config(ChannelModel::simo_onebit(reference_h8(), 100.0, 1.0));
  cfg.trials = 1000;
  cfg.xi1 = 1.01;
  cfg.xi2 = 0.99;
  cfg.regressor = {RegressorKind::kernel, 1.0, KernelKind::gaussian};
  const Experiment exp(cfg);
  const auto rec = exp.run_trials(worker_count_from_env());
  const double poe = over_estimation_probability(rec);
  const double lr = receding_level(rec, exp.i_mmse(), Scenario::A);
  const bool ok = 100.0 * poe <= 0.5 && std::abs(100.0 * lr - 24.32) <= 4.0;
  return {ok, fmt("P_oe %.2f%%, L_r %.2f%%", 100.0 * poe, 100.0 * lr)};
}

Outcome c10_clt() {
  ExperimentConfig cfg;
  cfg.channel = ChannelModel::awgn(100.0, 1.0);
  cfg.L = 10'000;
  cfg.trials = 2000;
  cfg.clt_nu = 0.5;
  cfg.clt_target_poe = 0.05;
  const Experiment exp(cfg);
  const auto rec = exp.run_trials(worker_count_from_env(), /*clt=*/true);
  const double poe = over_estimation_probability(rec);
  return {poe <= 0.07, fmt("over-estimation %.2f%%", 100.0 * poe)};
}

Outcome c11_determinism() {
  auto render = [] {
    std::ostringstream os;
    const ChannelModel base = ChannelModel::simo_onebit_dithered(reference_h8(), 100.0, 1.0, 1.34);
    const std::vector<double> snrs{0, 20};
    const std::vector<ChannelKind> kinds{ChannelKind::simo_linear, ChannelKind::simo_onebit_dithered};
    write_sweep_csv(os, gmi_sweep(base, kinds, snrs));

    ExperimentConfig cfg = table_config(base);
    cfg.trials = 40;
    cfg.lambda_grid = {10.0, 100.0};
    cfg.regressor.lambda = 10.0;
    write_lambda_csv(os, lambda_sweep(cfg, 1));

    ExperimentConfig awgn = table_config(ChannelModel::awgn(100.0, 1.0));
    awgn.trials = 100;
    const Experiment demo(awgn);
    write_awgn_demo_csv(os, demo.run_trials(1));

    awgn.L = 400;
    const Experiment clt(awgn);
    write_trials_csv(os, clt.run_trials(1, true));
    return os.str();
  };
  const std::string first = render();
  const std::string second = render();
  // Thread count must not change the output either.
  ExperimentConfig awgn = table_config(ChannelModel::awgn(100.0, 1.0));
  awgn.trials = 64;
  const Experiment exp(awgn);
  std::ostringstream s1, s4;
  write_trials_csv(s1, exp.run_trials(1));
  write_trials_csv(s4, exp.run_trials(4));
  const bool ok = first == second && s1.str() == s4.str();
  return {ok, ok ? "byte-identical reruns and thread counts" : "outputs differ between runs"};
}

Outcome c12_properties(const std::vector<std::string>& binaries) {
  if (binaries.empty()) return {false, "no property-test binaries given"};
  std::ostringstream os;
  bool ok = true;
  for (const auto& bin : binaries) {
    const auto t0 = Clock::now();
    const std::string cmd = "\"" + bin + "\" > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    const double secs = seconds_since(t0);
    const std::string name = bin.substr(bin.find_last_of('/') + 1);
    const bool pass = rc == 0 && secs < 60.0;
    ok &= pass;
    os << name << (pass ? " ok" : " FAILED") << " (" << fmt("%.1fs", secs) << ") ";
  }
  return {ok, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  std::vector<std::string> binaries;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string item;
      while (std::getline(ss, item, ',')) only.insert(std::stoi(item));
    } else {
      binaries.push_back(arg);
    }
  }

  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "capacity identity", 1.0, c1_capacity},
      {2, "one-bit scalar closed form", 1.0, c2_onebit_scalar},
      {3, "Bussgang identity", 5.0, c3_bussgang},
      {4, "gamma identity", 30.0, c4_gamma_identity},
      {5, "scaling-error ordering and quadratic gap", 30.0, c5_corollary},
      {6, "GMI-vs-SNR shape", 600.0, c6_snr_shape},
      {7, "AWGN demo", 300.0, c7_awgn_demo},
      {8, "no-quantization and dithered ridge rows", 1800.0, c8_table2},
      {9, "one-bit Gaussian kernel row", 1800.0, c9_table3},
      {10, "CLT over-estimation guarantee", 600.0, c10_clt},
      {11, "determinism", 600.0, c11_determinism},
      {12, "invariant suites", 600.0, [&] { return c12_properties(binaries); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail += fmt(" [over time budget %.0fs]", c.budget_s);
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
