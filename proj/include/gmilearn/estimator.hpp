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
#include <memory>
#include <vector>

#include "gmilearn/channel.hpp"
#include "gmilearn/predictor.hpp"
#include "gmilearn/quadrature.hpp"

namespace gmilearn {

/// Gauss-Legendre points per panel of the transition rule (config `quad.order`).
inline constexpr int kDefaultQuadOrder = 16;
inline constexpr int kMaxEnumerationDim = 20;

/// How E[x y] and E[y y'] are obtained for quantized channels.
struct MomentOracle {
  enum class Method { quadrature, monte_carlo };
  Method method = Method::quadrature;
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0x5eed;
  int quad_order = kDefaultQuadOrder;
};

struct SecondMoments {
  Eigen::VectorXd e_xy;
  Eigen::MatrixXd e_yy;
};

SecondMoments second_moments(const ChannelModel& model, const MomentOracle& oracle = {});

struct LmmseResult {
  Predictor g;
  Eigen::VectorXd beta;
  double delta = 0.0;
};

/// g(y) = E[xy]' E[yy']^-1 y and Delta = E[xy]' E[yy']^-1 E[xy] / P.
/// Throws NumericError(singular_moment_matrix) when cond(E[yy']) > 1e12.
LmmseResult lmmse_predictor(const ChannelModel& model, const MomentOracle& oracle = {});

/// Per-pattern posterior summary for a quantized output y in {-1,+1}^p.
struct PatternPosterior {
  double probability = 0.0;  ///< Pr(y)
  double mean = 0.0;         ///< E[x | y]
};

/// Posterior integrals of a quantized channel on a fixed quadrature rule.
///
/// Pr(y | u) = prod_i F(y_i (h_i u + b_i) / sigma) is accumulated in the log
/// domain per node, so patterns with tiny probability stay representable.
/// The tables are built once; every query is const and thread-safe.
class PosteriorIntegrator {
 public:
  explicit PosteriorIntegrator(ChannelModel model, int quad_order = kDefaultQuadOrder);

  const ChannelModel& model() const { return model_; }
  const QuadratureRule& rule() const { return rule_; }

  /// Throws NumericError(degenerate_posterior) if Pr(y) < 1e-300.
  PatternPosterior posterior(const Eigen::Ref<const Eigen::VectorXd>& y) const;

  /// All 2^p patterns; index bit i set <=> y_i = +1. Requires p <= 20.
  std::vector<PatternPosterior> enumerate() const;

  /// E[y_i | u] = 2 F((h_i u + b_i) / sigma) - 1 at node k.
  double conditional_output_mean(int i, std::size_t k) const;

 private:
  ChannelModel model_;
  QuadratureRule rule_;
  // log F(+(h_i u_k + b_i)/sigma) and log F(-(...)), row i, column k.
  Eigen::MatrixXd log_plus_;
  Eigen::MatrixXd log_minus_;
};

/// Output vector of pattern `index` (bit i set <=> y_i = +1).
Eigen::VectorXd pattern_output(int p, std::uint32_t index);
std::uint32_t pattern_index(const Eigen::Ref<const Eigen::VectorXd>& y);

/// Conditional-mean estimator E[x | y] for any channel kind.
class MmseEstimator {
 public:
  explicit MmseEstimator(const ChannelModel& model, int quad_order = kDefaultQuadOrder);

  double operator()(const Eigen::Ref<const Eigen::VectorXd>& y) const;
  /// var E[x | y]; enumeration over 2^p patterns for quantized kinds.
  double variance() const;
  Predictor as_predictor() const;
  const ChannelModel& model() const { return model_; }
  /// Null for linear kinds.
  const PosteriorIntegrator* integrator() const { return integrator_.get(); }

 private:
  ChannelModel model_;
  std::shared_ptr<const PosteriorIntegrator> integrator_;
};

double mmse_estimate(const ChannelModel& model, const Eigen::Ref<const Eigen::VectorXd>& y);

/// var E[x|y]. Throws NumericError(dimension_too_large) for quantized p > 20.
double var_conditional_mean(const ChannelModel& model, int quad_order = kDefaultQuadOrder);

}  // namespace gmilearn
