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

#include "gmilearn/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace gmilearn {

namespace {

constexpr double kStandardHalfWidth = 12.0;
constexpr double kBasePanel = 0.5;

struct LegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre on [-1, 1] by Newton iteration on P_n.
LegendreRule gauss_legendre(int n) {
  LegendreRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.nodes[static_cast<std::size_t>(i)] = -z;
    r.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    r.weights[static_cast<std::size_t>(i)] = w;
    r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return r;
}

double standard_density(double t) {
  return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) acc += weights[k] * f(nodes[k]);
  return acc;
}

QuadratureRule gauss_hermite_rule(int order, double P) {
  if (order < 2) throw std::invalid_argument("gauss_hermite_rule: order must be at least 2");
  if (!(P > 0.0)) throw std::invalid_argument("gauss_hermite_rule: P must be positive");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    jacobi(k, k - 1) = std::sqrt(static_cast<double>(k));
    jacobi(k - 1, k) = jacobi(k, k - 1);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  const double scale = std::sqrt(P);
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  for (int k = 0; k < order; ++k) {
    const double v0 = eig.eigenvectors()(0, k);
    rule.nodes[static_cast<std::size_t>(k)] = scale * eig.eigenvalues()[k];
    rule.weights[static_cast<std::size_t>(k)] = v0 * v0;
  }
  // Symmetrize: the solver returns nodes that are odd only up to rounding.
  for (int k = 0; k < order / 2; ++k) {
    const auto lo = static_cast<std::size_t>(k);
    const auto hi = static_cast<std::size_t>(order - 1 - k);
    const double node = 0.5 * (rule.nodes[hi] - rule.nodes[lo]);
    const double weight = 0.5 * (rule.weights[hi] + rule.weights[lo]);
    rule.nodes[lo] = -node;
    rule.nodes[hi] = node;
    rule.weights[lo] = weight;
    rule.weights[hi] = weight;
  }
  if (order % 2 == 1) rule.nodes[static_cast<std::size_t>(order / 2)] = 0.0;
  rule.half_width = rule.nodes.back();
  return rule;
}

QuadratureRule transition_rule(const ChannelModel& model, int points_per_panel) {
  if (points_per_panel < 2)
    throw std::invalid_argument("transition_rule: need at least 2 points per panel");
  const double root_p = std::sqrt(model.P);
  const double sigma = model.sigma();

  std::vector<double> breaks;
  for (double t = -kStandardHalfWidth; t <= kStandardHalfWidth + 1e-12; t += kBasePanel)
    breaks.push_back(t);

  static constexpr double kOffsets[] = {0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0};
  for (Eigen::Index i = 0; i < model.h.size(); ++i) {
    if (model.h[i] == 0.0) continue;
    const double centre = -model.b[i] / (model.h[i] * root_p);
    const double width = sigma / (std::abs(model.h[i]) * root_p);
    for (double k : kOffsets) {
      for (double sgn : {-1.0, 1.0}) {
        const double t = centre + sgn * k * width;
        if (t > -kStandardHalfWidth && t < kStandardHalfWidth) breaks.push_back(t);
      }
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               breaks.end());

  const LegendreRule gl = gauss_legendre(points_per_panel);
  QuadratureRule rule;
  rule.nodes.reserve((breaks.size() - 1) * gl.nodes.size());
  rule.weights.reserve(rule.nodes.capacity());
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const double mid = 0.5 * (breaks[j] + breaks[j + 1]);
    const double half = 0.5 * (breaks[j + 1] - breaks[j]);
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      const double t = mid + half * gl.nodes[k];
      rule.nodes.push_back(root_p * t);
      rule.weights.push_back(half * gl.weights[k] * standard_density(t));
    }
  }
  rule.half_width = kStandardHalfWidth * root_p;
  return rule;
}

}  // namespace gmilearn
