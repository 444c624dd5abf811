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

#include "gmilearn/regress.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gmilearn/errors.hpp"

namespace gmilearn {

namespace {

const double kLogTiny = std::log(1e-300);

class RidgePredictorImpl final : public PredictorImpl {
 public:
  explicit RidgePredictorImpl(Eigen::VectorXd beta) : beta_(std::move(beta)) {}
  double predict(const Eigen::Ref<const Eigen::VectorXd>& y) const override {
    return beta_.dot(y);
  }
  int dim() const override { return static_cast<int>(beta_.size()); }
  PredictorKind kind() const override { return PredictorKind::ridge_fit; }
  std::optional<Eigen::VectorXd> linear_coefficients() const override { return beta_; }

 private:
  Eigen::VectorXd beta_;
};

class KernelPredictorImpl final : public PredictorImpl {
 public:
  explicit KernelPredictorImpl(KernelFit fit) : fit_(std::move(fit)) {}
  double predict(const Eigen::Ref<const Eigen::VectorXd>& y) const override {
    return fit_.predict(y);
  }
  int dim() const override { return fit_.anchors().dim(); }
  PredictorKind kind() const override { return PredictorKind::kernel_fit; }

 private:
  KernelFit fit_;
};

}  // namespace

std::string_view to_string(KernelKind kind) {
  return kind == KernelKind::gaussian ? "gaussian" : "tricube";
}

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "gaussian") return KernelKind::gaussian;
  if (name == "tricube") return KernelKind::tricube;
  throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

RegressorKind parse_regressor_kind(std::string_view name) {
  if (name == "ridge") return RegressorKind::ridge;
  if (name == "kernel") return RegressorKind::kernel;
  throw std::invalid_argument("unknown regressor '" + std::string(name) + "'");
}

Predictor RidgeFit::predictor() const {
  return Predictor(std::make_shared<RidgePredictorImpl>(beta));
}

RidgeFit fit_ridge(const TrainingSet& t, double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("fit_ridge: lambda must be >= 0");
  if (t.size() == 0) throw std::invalid_argument("fit_ridge: empty training set");
  const Eigen::Index p = t.y.cols();
  Eigen::MatrixXd gram = t.y.transpose() * t.y;
  gram.diagonal().array() += lambda;
  const Eigen::VectorXd rhs = t.y.transpose() * t.x;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  const double scale = std::max(gram.diagonal().maxCoeff(), std::numeric_limits<double>::min());
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().minCoeff() <= 1e-13 * scale || ldlt.rcond() < 1e-14)
    throw NumericError(NumericErrc::singular_system,
                       "fit_ridge: Y'Y + lambda I is singular (rank(Y) < " + std::to_string(p) +
                           ")");
  return {ldlt.solve(rhs), lambda};
}

KernelFit::KernelFit(TrainingSet anchors, double lambda, KernelKind kernel)
    : anchors_(std::make_shared<const TrainingSet>(std::move(anchors))),
      lambda_(lambda),
      kernel_(kernel) {
  if (!(lambda > 0.0)) throw std::invalid_argument("fit_kernel: lambda must be positive");
  if (anchors_->size() == 0) throw std::invalid_argument("fit_kernel: no anchors");
  anchor_sq_norms_ = anchors_->y.rowwise().squaredNorm();
}

double KernelFit::weight(const Eigen::Ref<const Eigen::VectorXd>& y, std::size_t l) const {
  const double d2 = (anchors_->y.row(static_cast<Eigen::Index>(l)).transpose() - y).squaredNorm();
  if (kernel_ == KernelKind::gaussian)
    return std::exp(-d2 / (2.0 * lambda_ * lambda_)) / (std::sqrt(2.0 * std::numbers::pi) * lambda_);
  const double u = std::sqrt(d2) / lambda_;
  if (u >= 1.0) return 0.0;
  const double c = 1.0 - u * u * u;
  return c * c * c;
}

double KernelFit::nearest_anchor_x(const Eigen::Ref<const Eigen::VectorXd>& y) const {
  Eigen::Index best = 0;
  (anchors_->y.rowwise() - y.transpose()).rowwise().squaredNorm().minCoeff(&best);
  return anchors_->x[best];
}

double KernelFit::predict(const Eigen::Ref<const Eigen::VectorXd>& y) const {
  if (y.size() != anchors_->y.cols())
    throw std::invalid_argument("kernel predict: output dimension mismatch");
  const Eigen::VectorXd cross = anchors_->y * y;
  const double yy = y.squaredNorm();
  const Eigen::Index L = anchors_->x.size();

  if (kernel_ == KernelKind::gaussian) {
    const double inv = 1.0 / (2.0 * lambda_ * lambda_);
    const double log_prefactor = -std::log(std::sqrt(2.0 * std::numbers::pi) * lambda_);
    Eigen::VectorXd logw(L);
    for (Eigen::Index l = 0; l < L; ++l) {
      const double d2 = std::max(0.0, anchor_sq_norms_[l] + yy - 2.0 * cross[l]);
      logw[l] = log_prefactor - d2 * inv;
    }
    const double top = logw.maxCoeff();
    if (top < kLogTiny) return nearest_anchor_x(y);
    double num = 0.0;
    double den = 0.0;
    for (Eigen::Index l = 0; l < L; ++l) {
      const double w = std::exp(logw[l] - top);
      num += w * anchors_->x[l];
      den += w;
    }
    return num / den;
  }

  double num = 0.0;
  double den = 0.0;
  for (Eigen::Index l = 0; l < L; ++l) {
    const double d2 = std::max(0.0, anchor_sq_norms_[l] + yy - 2.0 * cross[l]);
    const double u = std::sqrt(d2) / lambda_;
    if (u >= 1.0) continue;
    const double c = 1.0 - u * u * u;
    const double w = c * c * c;
    num += w * anchors_->x[l];
    den += w;
  }
  if (!(den >= 1e-300)) return nearest_anchor_x(y);
  return num / den;
}

Predictor KernelFit::predictor() const {
  return Predictor(std::make_shared<KernelPredictorImpl>(*this));
}

KernelFit fit_kernel(const TrainingSet& t, double lambda, KernelKind kernel) {
  return KernelFit(t, lambda, kernel);
}

Predictor fit_predictor(const TrainingSet& t, const RegressorSpec& spec) {
  if (spec.kind == RegressorKind::ridge) return fit_ridge(t, spec.lambda).predictor();
  return fit_kernel(t, spec.lambda, spec.kernel).predictor();
}

}  // namespace gmilearn
