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
#include <optional>
#include <span>
#include <vector>

#include "gmilearn/channel.hpp"
#include "gmilearn/gmi.hpp"
#include "gmilearn/predictor.hpp"
#include "gmilearn/regress.hpp"

namespace gmilearn {

struct LfitConfig {
  std::size_t Q = 5;
  double xi1 = 1.002;
  double xi2 = 0.998;
  RegressorSpec regressor;
  /// When set, pairs are shuffled with this seed before the contiguous split.
  std::optional<std::uint64_t> shuffle_seed;

  void validate() const;
};

/// Half-open index range [begin, begin + size) into the training set.
struct Fold {
  std::size_t begin = 0;
  std::size_t size = 0;
};

/// Q contiguous folds of floor(L/Q) pairs; trailing L mod Q pairs are dropped.
/// Throws std::invalid_argument when Q < 2 or Q > L.
std::vector<Fold> partition(std::size_t L, std::size_t Q);

struct FoldEstimate {
  MomentPair moments;  ///< fold-q empirical means; p_hat unused (0)
  std::vector<std::size_t> fit_indices;
  Fold held_out;
};

struct LfitOutput {
  Predictor g;
  double a = 0.0;
  double rate = 0.0;  ///< R_T in nats
  MomentPair moments;  ///< CV estimates with p_hat = empirical second moment of x
  /// a_T came out with the sign opposite to the configured xi2 regime, so xi2
  /// was mirrored about one before computing the rate.
  bool xi2_mirrored = false;
  /// a_T == 0; the rate is reported as zero.
  bool degenerate_scaling = false;
  std::vector<FoldEstimate> folds;
};

LfitOutput lfit_run(const TrainingSet& t, const LfitConfig& cfg);

/// Rate from moment estimates with bias factors; the shared final step of LFIT.
double biased_rate(const MomentPair& estimates, double a, double xi1, double xi2);

/// Sample variance with divisor n - 1. Throws NumericError(too_few_samples) for n < 2.
double empirical_variance(std::span<const double> samples);

/// Inverse complementary error function by bisection, |error| <= 1e-12.
double erfc_inv(double value);

struct CltRateConfig {
  double nu = 0.5;
  double target_poe = 0.05;
  RegressorSpec regressor;
  /// The configured input power (denominators of the bias-adjusted terms).
  double P = 1.0;
};

struct CltRateOutput {
  Predictor g;
  double a = 0.0;
  double rate = 0.0;
  double f_y = 0.0;
  double f_xy = 0.0;
  std::size_t fit_size = 0;
  std::size_t holdout_size = 0;
};

/// Fit on the first (1 - nu) L pairs, bias-adjusted moment estimates on the
/// remaining nu L, rate from the same gamma maximization as LFIT.
CltRateOutput clt_rate(const TrainingSet& t, const CltRateConfig& cfg);

}  // namespace gmilearn
