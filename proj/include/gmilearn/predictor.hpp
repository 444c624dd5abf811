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
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace gmilearn {

enum class PredictorKind { analytic_mmse, linear, ridge_fit, kernel_fit, cv_ensemble, custom };

std::string_view to_string(PredictorKind kind);

class PredictorImpl {
 public:
  virtual ~PredictorImpl() = default;
  virtual double predict(const Eigen::Ref<const Eigen::VectorXd>& y) const = 0;
  virtual int dim() const = 0;
  virtual PredictorKind kind() const = 0;
  /// beta such that predict(y) == beta' y, when the predictor is linear.
  virtual std::optional<Eigen::VectorXd> linear_coefficients() const { return std::nullopt; }
};

/// Output-processing function g: R^p -> R. Cheap to copy; the implementation
/// is shared and immutable, so evaluation is reentrant.
class Predictor {
 public:
  Predictor() = default;
  explicit Predictor(std::shared_ptr<const PredictorImpl> impl) : impl_(std::move(impl)) {}

  static Predictor linear(Eigen::VectorXd beta);
  /// Arithmetic mean of the members' predictions. Members must share a dimension.
  static Predictor ensemble(std::vector<Predictor> members);
  static Predictor from_function(int dim, std::function<double(const Eigen::VectorXd&)> fn);

  /// Throws std::invalid_argument on a dimension mismatch.
  double operator()(const Eigen::Ref<const Eigen::VectorXd>& y) const;

  int dim() const { return impl_->dim(); }
  PredictorKind kind() const { return impl_->kind(); }
  std::optional<Eigen::VectorXd> linear_coefficients() const {
    return impl_->linear_coefficients();
  }
  bool valid() const { return static_cast<bool>(impl_); }
  const PredictorImpl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const PredictorImpl> impl_;
};

double predict(const Predictor& g, const Eigen::Ref<const Eigen::VectorXd>& y);

}  // namespace gmilearn
