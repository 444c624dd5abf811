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

#include <functional>
#include <vector>

#include "gmilearn/channel.hpp"

namespace gmilearn {

/// Nodes and weights for integrals against the N(0, P) density:
///   integral f(u) phi_P(u) du  ~=  sum_k weights[k] * f(nodes[k]).
/// The density is folded into the weights, so the weights sum to one.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// Nodes lie in [-half_width, half_width].
  double half_width = 0.0;

  std::size_t size() const { return nodes.size(); }
  double integrate(const std::function<double(double)>& f) const;
};

/// Gauss-Hermite rule for the N(0, P) weight (Golub-Welsch on the probabilists'
/// Hermite recurrence). Exact for polynomials of degree < 2 * order.
QuadratureRule gauss_hermite_rule(int order, double P);

/// Composite Gauss-Legendre rule on [-12 sqrt(P), 12 sqrt(P)] whose panels are
/// refined around every quantizer transition u = -b_i / h_i, down to the width
/// sigma / |h_i| over which the CDF factors of that component switch. This is
/// the rule the estimators use: at high SNR those factors are nearly step
/// functions and a global Hermite rule converges far too slowly.
QuadratureRule transition_rule(const ChannelModel& model, int points_per_panel = 16);

}  // namespace gmilearn
