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

#include <memory>
#include <string_view>

#include "gmilearn/channel.hpp"
#include "gmilearn/predictor.hpp"

namespace gmilearn {

enum class KernelKind { gaussian, tricube };
enum class RegressorKind { ridge, kernel };

std::string_view to_string(KernelKind kind);
KernelKind parse_kernel_kind(std::string_view name);
RegressorKind parse_regressor_kind(std::string_view name);

struct RegressorSpec {
  RegressorKind kind = RegressorKind::ridge;
  double lambda = 0.0;
  KernelKind kernel = KernelKind::gaussian;
};

struct RidgeFit {
  Eigen::VectorXd beta;
  double lambda = 0.0;

  Predictor predictor() const;
};

/// beta = (Y'Y + lambda I)^-1 Y'x, no intercept.
/// Throws NumericError(singular_system) when lambda = 0 and Y is rank deficient.
RidgeFit fit_ridge(const TrainingSet& t, double lambda);

/// Nadaraya-Watson smoother over the stored anchors.
///
/// Weights are formed in the log domain. When every weight is below 1e-300
/// (or, for the tricube kernel, every anchor is outside the support radius)
/// the prediction falls back to the x of the nearest anchor.
class KernelFit {
 public:
  KernelFit(TrainingSet anchors, double lambda, KernelKind kernel);

  double predict(const Eigen::Ref<const Eigen::VectorXd>& y) const;
  /// Unnormalized kernel weight of anchor l (prefactor included for the Gaussian).
  double weight(const Eigen::Ref<const Eigen::VectorXd>& y, std::size_t l) const;

  const TrainingSet& anchors() const { return *anchors_; }
  double lambda() const { return lambda_; }
  KernelKind kernel() const { return kernel_; }
  Predictor predictor() const;

 private:
  double nearest_anchor_x(const Eigen::Ref<const Eigen::VectorXd>& y) const;

  std::shared_ptr<const TrainingSet> anchors_;
  Eigen::VectorXd anchor_sq_norms_;
  double lambda_;
  KernelKind kernel_;
};

KernelFit fit_kernel(const TrainingSet& t, double lambda, KernelKind kernel);

/// Fits the configured regressor and wraps it as a Predictor.
Predictor fit_predictor(const TrainingSet& t, const RegressorSpec& spec);

}  // namespace gmilearn
