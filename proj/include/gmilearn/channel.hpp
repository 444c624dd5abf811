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
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace gmilearn {

using Rng = std::mt19937_64;

enum class ChannelKind { awgn, simo_linear, simo_onebit, simo_onebit_dithered };

std::string_view to_string(ChannelKind kind);
ChannelKind parse_channel_kind(std::string_view name);

/// Memoryless real channel with scalar input and p-dimensional output.
///
/// Linear kinds produce y = h x + z, z ~ N(0, sigma2 I). Quantized kinds pass
/// each component through sign(.) with sign(0) = +1, after adding the dither
/// bias b_i for the dithered kind. Immutable once built; use the factories.
struct ChannelModel {
  ChannelKind kind = ChannelKind::awgn;
  Eigen::VectorXd h;
  double sigma2 = 1.0;
  Eigen::VectorXd b;
  double P = 1.0;
  /// Dither scale the biases were derived from (0 for undithered kinds).
  double alpha = 0.0;

  static ChannelModel awgn(double P, double sigma2);
  static ChannelModel simo_linear(Eigen::VectorXd h, double P, double sigma2);
  static ChannelModel simo_onebit(Eigen::VectorXd h, double P, double sigma2);
  static ChannelModel simo_onebit_dithered(Eigen::VectorXd h, double P, double sigma2,
                                           double alpha);

  int dim() const { return static_cast<int>(h.size()); }
  bool quantized() const {
    return kind == ChannelKind::simo_onebit || kind == ChannelKind::simo_onebit_dithered;
  }
  double sigma() const;

  /// Same channel law at a new input power; dither biases are re-derived.
  ChannelModel with_power(double new_P) const;
  /// Rescales P so that ||h||^2 P / sigma2 hits the requested SNR.
  ChannelModel with_snr_db(double snr) const;

  /// Throws std::invalid_argument when an invariant does not hold.
  void validate() const;
};

/// L i.i.d. training pairs; row l of y is the output for x[l].
struct TrainingSet {
  Eigen::VectorXd x;
  Eigen::MatrixXd y;

  std::size_t size() const { return static_cast<std::size_t>(x.size()); }
  int dim() const { return static_cast<int>(y.cols()); }

  /// Pairs at the given indices, in order.
  TrainingSet subset(const std::vector<std::size_t>& indices) const;
  TrainingSet slice(std::size_t begin, std::size_t count) const;
};

Eigen::VectorXd sample(const ChannelModel& model, double x, Rng& rng);

/// Writes one output into `out` (must have size p); avoids a heap allocation
/// per draw in the Monte Carlo loops.
void sample_into(const ChannelModel& model, double x, Rng& rng, Eigen::Ref<Eigen::VectorXd> out);

TrainingSet draw_training_set(const ChannelModel& model, std::size_t L, Rng& rng);

/// b_i = alpha sqrt(P) h_i u_i with u_i the standard normal quantile at i/(p+1).
Eigen::VectorXd dither_biases(const Eigen::VectorXd& h, double P, double alpha);

double snr_db(const ChannelModel& model);

/// Standard normal CDF.
double normal_cdf(double x);
/// log of the standard normal CDF, accurate far into the lower tail.
double log_normal_cdf(double x);
/// Inverse of the standard normal CDF by bisection, |error| <= 1e-12.
double normal_quantile(double prob);

/// Channel coefficients used throughout the numerical examples (p = 8, ||h|| = 1).
Eigen::VectorXd reference_h8();

}  // namespace gmilearn
