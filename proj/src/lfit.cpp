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

#include "gmilearn/lfit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gmilearn/errors.hpp"

namespace gmilearn {

void LfitConfig::validate() const {
  if (Q < 2) throw std::invalid_argument("lfit: Q must be at least 2");
  if (!(xi1 >= 1.0)) throw std::invalid_argument("lfit: xi1 must be >= 1");
  if (!(xi2 > 0.0)) throw std::invalid_argument("lfit: xi2 must be positive");
  if (regressor.kind == RegressorKind::kernel && !(regressor.lambda > 0.0))
    throw std::invalid_argument("lfit: kernel width lambda must be positive");
  if (!(regressor.lambda >= 0.0)) throw std::invalid_argument("lfit: lambda must be >= 0");
}

std::vector<Fold> partition(std::size_t L, std::size_t Q) {
  if (Q < 2) throw std::invalid_argument("partition: Q must be at least 2");
  if (Q > L)
    throw std::invalid_argument("partition: Q = " + std::to_string(Q) + " exceeds L = " +
                                std::to_string(L));
  const std::size_t size = L / Q;
  std::vector<Fold> folds(Q);
  for (std::size_t q = 0; q < Q; ++q) folds[q] = {q * size, size};
  return folds;
}

double biased_rate(const MomentPair& est, double a, double xi1, double xi2) {
  if (a == 0.0) return 0.0;
  const double quad = xi1 * est.e_g2 / (2.0 * a * a * est.p_hat);
  const double lin = xi2 * est.e_xg / (a * est.p_hat);
  return maximize_rate_objective(quad, lin).value;
}

LfitOutput lfit_run(const TrainingSet& full, const LfitConfig& cfg) {
  cfg.validate();
  const std::vector<Fold> folds = partition(full.size(), cfg.Q);
  const std::size_t used = folds.size() * folds.front().size;

  std::vector<std::size_t> order(full.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (cfg.shuffle_seed) {
    Rng rng(*cfg.shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  order.resize(used);
  const TrainingSet t = full.subset(order);

  LfitOutput out;
  std::vector<Predictor> members;
  members.reserve(folds.size());
  for (const Fold& held : folds) {
    FoldEstimate fe;
    fe.held_out = held;
    fe.fit_indices.reserve(used - held.size);
    for (std::size_t i = 0; i < used; ++i)
      if (i < held.begin || i >= held.begin + held.size) fe.fit_indices.push_back(i);
    const Predictor g = fit_predictor(t.subset(fe.fit_indices), cfg.regressor);

    double s_xg = 0.0;
    double s_g2 = 0.0;
    for (std::size_t i = held.begin; i < held.begin + held.size; ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      const double v = g(t.y.row(row).transpose());
      s_xg += t.x[row] * v;
      s_g2 += v * v;
    }
    const double n = static_cast<double>(held.size);
    fe.moments = {s_xg / n, s_g2 / n, 0.0};
    out.folds.push_back(std::move(fe));
    members.push_back(g);
  }

  // Fixed fold order keeps the reduction deterministic.
  double e_xg = 0.0;
  double e_g2 = 0.0;
  for (const auto& fe : out.folds) {
    e_xg += fe.moments.e_xg;
    e_g2 += fe.moments.e_g2;
  }
  const double Q = static_cast<double>(folds.size());
  out.moments = {e_xg / Q, e_g2 / Q, t.x.squaredNorm() / static_cast<double>(used)};
  if (out.moments.e_g2 < 1e-300)
    throw NumericError(NumericErrc::zero_predictor, "lfit: cross-validated E[g^2] vanishes");

  out.g = Predictor::ensemble(std::move(members));
  out.a = out.moments.e_xg / out.moments.p_hat;
  if (out.a == 0.0) {
    out.degenerate_scaling = true;
    return out;
  }
  double xi2 = cfg.xi2;
  if ((out.a > 0.0 && xi2 > 1.0) || (out.a < 0.0 && xi2 < 1.0)) {
    xi2 = 2.0 - xi2;
    out.xi2_mirrored = true;
  }
  out.rate = biased_rate(out.moments, out.a, cfg.xi1, xi2);
  return out;
}

double empirical_variance(std::span<const double> samples) {
  if (samples.size() < 2)
    throw NumericError(NumericErrc::too_few_samples, "empirical_variance: need at least 2 samples");
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  return ss / (n - 1.0);
}

double erfc_inv(double value) {
  if (!(value > 0.0 && value < 2.0)) throw std::domain_error("erfc_inv: argument must lie in (0, 2)");
  double lo = -30.0;
  double hi = 30.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (std::erfc(mid) > value)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

CltRateOutput clt_rate(const TrainingSet& t, const CltRateConfig& cfg) {
  if (!(cfg.nu > 0.0 && cfg.nu < 1.0)) throw std::invalid_argument("clt_rate: nu must lie in (0, 1)");
  if (!(cfg.target_poe > 0.0 && cfg.target_poe < 1.0))
    throw std::invalid_argument("clt_rate: target_poe must lie in (0, 1)");
  if (!(cfg.P > 0.0)) throw std::invalid_argument("clt_rate: P must be positive");
  const std::size_t L = t.size();
  const auto fit_size = static_cast<std::size_t>(std::floor((1.0 - cfg.nu) * static_cast<double>(L)));
  const std::size_t hold = L - fit_size;
  if (hold < 30)
    throw std::invalid_argument("clt_rate: nu * L = " + std::to_string(hold) +
                                " is below the CLT guard of 30");
  if (fit_size < 1) throw std::invalid_argument("clt_rate: nothing left to fit on");

  CltRateOutput out;
  out.fit_size = fit_size;
  out.holdout_size = hold;
  const TrainingSet fit_part = t.slice(0, fit_size);
  out.g = fit_predictor(fit_part, cfg.regressor);

  double s_xg = 0.0;
  for (std::size_t i = 0; i < fit_size; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    s_xg += fit_part.x[row] * out.g(fit_part.y.row(row).transpose());
  }
  out.a = s_xg / fit_part.x.squaredNorm();
  if (out.a == 0.0) return out;

  std::vector<double> g2(hold);
  std::vector<double> xg(hold);
  for (std::size_t i = 0; i < hold; ++i) {
    const auto row = static_cast<Eigen::Index>(fit_size + i);
    const double v = out.g(t.y.row(row).transpose());
    g2[i] = v * v;
    xg[i] = t.x[row] * v;
  }
  const double n = static_cast<double>(hold);
  const double z = erfc_inv(cfg.target_poe);
  const double mean_g2 = std::accumulate(g2.begin(), g2.end(), 0.0) / n;
  const double mean_xg = std::accumulate(xg.begin(), xg.end(), 0.0) / n;
  const double sign_a = out.a > 0.0 ? 1.0 : -1.0;
  out.f_y = (mean_g2 + std::sqrt(2.0 * empirical_variance(g2)) / std::sqrt(n) * z) /
            (2.0 * out.a * out.a * cfg.P);
  out.f_xy = (mean_xg - sign_a * std::sqrt(2.0 * empirical_variance(xg)) / std::sqrt(n) * z) /
             (out.a * cfg.P);
  out.rate = maximize_rate_objective(out.f_y, out.f_xy).value;
  return out;
}

}  // namespace gmilearn
