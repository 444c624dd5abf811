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

#include <cstddef>
#include <functional>

#include "gmilearn/channel.hpp"
#include "gmilearn/estimator.hpp"
#include "gmilearn/predictor.hpp"

namespace gmilearn {

/// Delta values at or above one are clamped to this and flagged.
inline constexpr double kDeltaCeiling = 1.0 - 1e-12;

struct GmiResult {
  double delta = 0.0;
  double gmi_nats = 0.0;
  double a_opt = 0.0;
  /// Maximizing gamma of the scenario-A objective; equals -2 theta a^2 P.
  double gamma_opt = 0.0;
  bool clamped = false;

  double gmi_bits() const;
};

/// (E[x g(y)], E[g(y)^2], second moment of x).
struct MomentPair {
  double e_xg = 0.0;
  double e_g2 = 0.0;
  double p_hat = 1.0;

  double delta() const { return e_xg * e_xg / (p_hat * e_g2); }
};

double nats_to_bits(double nats);

/// 1/2 ln(1/(1 - delta)). Throws std::domain_error for delta < 0; values
/// >= 1 are clamped to 1 - 1e-12 (`clamped` reports it when non-null).
double gmi_from_delta(double delta, bool* clamped = nullptr);

/// a = E[x g] / P.
double optimal_scaling(const MomentPair& m);

struct DeltaEstimate {
  MomentPair moments;
  double delta = 0.0;
  /// Standard errors of the two empirical means.
  double se_xg = 0.0;
  double se_g2 = 0.0;
};

/// Fresh Monte Carlo estimate of E[x g], E[g^2] under x ~ N(0, P).
/// Throws NumericError(zero_predictor) if E[g^2] < 1e-300.
DeltaEstimate delta_of_predictor(const ChannelModel& model, const Predictor& g,
                                 std::size_t eval_samples, Rng& rng);

/// Exact E[x g], E[g^2] where a closed form exists: linear g on a linear
/// channel, or any g on a quantized channel with p <= 20 (summing over the
/// 2^p output patterns). Returns false when neither applies.
bool exact_moments(const ChannelModel& model, const Predictor& g, MomentPair& out,
                   const std::vector<PatternPosterior>* patterns = nullptr);

GmiResult gmi_lmmse(const ChannelModel& model, const MomentOracle& oracle = {});
GmiResult gmi_mmse(const ChannelModel& model, int quad_order = kDefaultQuadOrder);

/// (E[xy])^2 / (P E[y^2] - (E[xy])^2) for scalar-output channels.
double bussgang_snr(const ChannelModel& model, const MomentOracle& oracle = {});

/// Maximum over gamma >= 0 of
///   1/2 ln(1 + gamma) - gamma/2 - gamma^2/(1 + gamma) * quad_coef + gamma * lin_coef.
/// The objective is concave for quad_coef >= 0; golden-section search on an
/// expanding bracket [0, 2^k]. Value is never below f(0) = 0. When
/// lin_coef - quad_coef >= 1/2 the objective is unbounded and both fields are +inf.
struct RateMaximum {
  double gamma = 0.0;
  double value = 0.0;
};
RateMaximum maximize_rate_objective(double quad_coef, double lin_coef);

double rate_objective(double gamma, double quad_coef, double lin_coef);

/// Golden-section maximization of a unimodal f on [lo, hi].
double golden_section_argmax(const std::function<double(double)>& f, double lo, double hi,
                             double rel_tol);

/// GMI when the decoder uses scaling `a` with the given true moments.
GmiResult gmi_scenario_A(const MomentPair& m, double a);
/// GMI when the decoder picks the optimal scaling for the given moments.
GmiResult gmi_scenario_B(const MomentPair& m);

/// 1/2 ln(1/(1 - dA)) - (dA - dB) / (2 (1 - dA)).
double lower_bound_A(double delta_A, double delta_B);

}  // namespace gmilearn
