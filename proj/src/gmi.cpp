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

#include "gmilearn/gmi.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gmilearn/errors.hpp"

namespace gmilearn {

namespace {

constexpr double kGoldenRatio = 0.6180339887498949;  // (sqrt(5) - 1) / 2
constexpr double kGammaTol = 1e-10;
constexpr int kMaxBracketDoublings = 60;

GmiResult from_delta(double delta) {
  GmiResult r;
  r.gmi_nats = gmi_from_delta(delta, &r.clamped);
  r.delta = r.clamped ? kDeltaCeiling : delta;
  r.a_opt = r.delta;
  r.gamma_opt = r.delta / (1.0 - r.delta);
  return r;
}

}  // namespace

double GmiResult::gmi_bits() const { return nats_to_bits(gmi_nats); }

double nats_to_bits(double nats) { return nats / std::numbers::ln2; }

double gmi_from_delta(double delta, bool* clamped) {
  if (delta < 0.0 || std::isnan(delta)) throw std::domain_error("gmi_from_delta: delta < 0");
  const bool clamp = delta > kDeltaCeiling;
  if (clamped) *clamped = clamp;
  if (clamp) delta = kDeltaCeiling;
  return -0.5 * std::log1p(-delta);
}

double optimal_scaling(const MomentPair& m) {
  if (!(m.p_hat > 0.0)) throw std::invalid_argument("optimal_scaling: p_hat must be positive");
  return m.e_xg / m.p_hat;
}

DeltaEstimate delta_of_predictor(const ChannelModel& model, const Predictor& g,
                                 std::size_t eval_samples, Rng& rng) {
  if (eval_samples < 1000)
    throw std::invalid_argument("delta_of_predictor: need at least 1000 evaluation samples");
  std::normal_distribution<double> input(0.0, std::sqrt(model.P));
  Eigen::VectorXd y(model.h.size());
  double s_xg = 0.0, s_xg2 = 0.0, s_g2 = 0.0, s_g4 = 0.0;
  for (std::size_t n = 0; n < eval_samples; ++n) {
    const double x = input(rng);
    sample_into(model, x, rng, y);
    const double v = g(y);
    const double xg = x * v;
    const double g2 = v * v;
    s_xg += xg;
    s_xg2 += xg * xg;
    s_g2 += g2;
    s_g4 += g2 * g2;
  }
  const double n = static_cast<double>(eval_samples);
  DeltaEstimate out;
  out.moments = {s_xg / n, s_g2 / n, model.P};
  if (out.moments.e_g2 < 1e-300)
    throw NumericError(NumericErrc::zero_predictor, "delta_of_predictor: E[g^2] vanishes");
  out.delta = out.moments.delta();
  out.se_xg = std::sqrt(std::max(0.0, s_xg2 / n - out.moments.e_xg * out.moments.e_xg) / n);
  out.se_g2 = std::sqrt(std::max(0.0, s_g4 / n - out.moments.e_g2 * out.moments.e_g2) / n);
  return out;
}

bool exact_moments(const ChannelModel& model, const Predictor& g, MomentPair& out,
                   const std::vector<PatternPosterior>* patterns) {
  if (!model.quantized()) {
    const auto beta = g.linear_coefficients();
    if (!beta) return false;
    const double bh = beta->dot(model.h);
    out = {model.P * bh, model.P * bh * bh + model.sigma2 * beta->squaredNorm(), model.P};
    return true;
  }
  if (model.dim() > kMaxEnumerationDim) return false;
  std::vector<PatternPosterior> local;
  if (!patterns) {
    local = PosteriorIntegrator(model).enumerate();
    patterns = &local;
  }
  double e_xg = 0.0;
  double e_g2 = 0.0;
  const int p = model.dim();
  for (std::uint32_t idx = 0; idx < patterns->size(); ++idx) {
    const PatternPosterior& pat = (*patterns)[idx];
    if (pat.probability == 0.0) continue;
    const double v = g(pattern_output(p, idx));
    e_xg += pat.probability * pat.mean * v;
    e_g2 += pat.probability * v * v;
  }
  out = {e_xg, e_g2, model.P};
  return true;
}

GmiResult gmi_lmmse(const ChannelModel& model, const MomentOracle& oracle) {
  return from_delta(lmmse_predictor(model, oracle).delta);
}

GmiResult gmi_mmse(const ChannelModel& model, int quad_order) {
  return from_delta(var_conditional_mean(model, quad_order) / model.P);
}

double bussgang_snr(const ChannelModel& model, const MomentOracle& oracle) {
  if (model.dim() != 1) throw std::invalid_argument("bussgang_snr: scalar output required");
  const SecondMoments m = second_moments(model, oracle);
  const double c = m.e_xy[0];
  return c * c / (model.P * m.e_yy(0, 0) - c * c);
}

double rate_objective(double gamma, double quad_coef, double lin_coef) {
  // gamma^2/(1+gamma) = gamma - 1 + 1/(1+gamma); grouping the linear terms
  // keeps the rounding error independent of gamma's magnitude.
  const double slope = lin_coef - quad_coef - 0.5;
  return 0.5 * std::log1p(gamma) + slope * gamma + quad_coef * gamma / (1.0 + gamma);
}

double golden_section_argmax(const std::function<double(double)>& f, double lo, double hi,
                             double rel_tol) {
  double a = lo;
  double b = hi;
  double c = b - kGoldenRatio * (b - a);
  double d = a + kGoldenRatio * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > rel_tol * std::max(1.0, std::abs(0.5 * (a + b)))) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGoldenRatio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGoldenRatio * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

RateMaximum maximize_rate_objective(double quad_coef, double lin_coef) {
  auto f = [&](double g) { return rate_objective(g, quad_coef, lin_coef); };
  // f(0) = 0 and f'(0) = lin_coef; concavity puts the maximum at 0 otherwise.
  if (!(lin_coef > 0.0)) return {0.0, 0.0};
  // Slope at infinity is lin - quad - 1/2; at or above zero f grows without bound.
  if (lin_coef - quad_coef - 0.5 >= 0.0) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  double hi = 1.0;
  for (int k = 0; k < kMaxBracketDoublings && f(2.0 * hi) > f(hi); ++k) hi *= 2.0;
  const double gamma = golden_section_argmax(f, 0.0, 2.0 * hi, kGammaTol);
  const double value = f(gamma);
  if (!(value > 0.0)) return {0.0, 0.0};
  return {gamma, value};
}

GmiResult gmi_scenario_A(const MomentPair& m, double a) {
  if (a == 0.0) throw std::invalid_argument("gmi_scenario_A: scaling a must be nonzero");
  if (!(m.e_g2 > 0.0) || !(m.p_hat > 0.0))
    throw NumericError(NumericErrc::zero_predictor, "gmi_scenario_A: E[g^2] must be positive");
  const RateMaximum best =
      maximize_rate_objective(m.e_g2 / (2.0 * a * a * m.p_hat), m.e_xg / (a * m.p_hat));
  GmiResult r;
  r.delta = a * m.e_xg / m.e_g2;
  r.gmi_nats = best.value;
  r.a_opt = a;
  r.gamma_opt = best.gamma;
  return r;
}

GmiResult gmi_scenario_B(const MomentPair& m) {
  if (!(m.e_g2 >= 1e-300))
    throw NumericError(NumericErrc::zero_predictor, "gmi_scenario_B: E[g^2] vanishes");
  GmiResult r = from_delta(m.delta());
  r.a_opt = optimal_scaling(m);
  return r;
}

double lower_bound_A(double delta_A, double delta_B) {
  if (!(delta_A > 0.0 && delta_A < 1.0))
    throw std::domain_error("lower_bound_A: delta_A must lie in (0, 1)");
  return -0.5 * std::log1p(-delta_A) - (delta_A - delta_B) / (2.0 * (1.0 - delta_A));
}

}  // namespace gmilearn
