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

#include "gmilearn/predictor.hpp"

#include <stdexcept>
#include <string>

namespace gmilearn {

std::string_view to_string(PredictorKind kind) {
  switch (kind) {
    case PredictorKind::analytic_mmse:
      return "analytic_mmse";
    case PredictorKind::linear:
      return "linear";
    case PredictorKind::ridge_fit:
      return "ridge_fit";
    case PredictorKind::kernel_fit:
      return "kernel_fit";
    case PredictorKind::cv_ensemble:
      return "cv_ensemble";
    case PredictorKind::custom:
      return "custom";
  }
  return "unknown";
}

namespace {

class LinearPredictor final : public PredictorImpl {
 public:
  explicit LinearPredictor(Eigen::VectorXd beta) : beta_(std::move(beta)) {}
  double predict(const Eigen::Ref<const Eigen::VectorXd>& y) const override {
    return beta_.dot(y);
  }
  int dim() const override { return static_cast<int>(beta_.size()); }
  PredictorKind kind() const override { return PredictorKind::linear; }
  std::optional<Eigen::VectorXd> linear_coefficients() const override { return beta_; }

 private:
  Eigen::VectorXd beta_;
};

class EnsemblePredictor final : public PredictorImpl {
 public:
  explicit EnsemblePredictor(std::vector<Predictor> members) : members_(std::move(members)) {}
  double predict(const Eigen::Ref<const Eigen::VectorXd>& y) const override {
    double acc = 0.0;
    for (const auto& m : members_) acc += m.impl().predict(y);
    return acc / static_cast<double>(members_.size());
  }
  int dim() const override { return members_.front().dim(); }
  PredictorKind kind() const override { return PredictorKind::cv_ensemble; }
  std::optional<Eigen::VectorXd> linear_coefficients() const override {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(dim());
    for (const auto& m : members_) {
      auto beta = m.linear_coefficients();
      if (!beta) return std::nullopt;
      acc += *beta;
    }
    return acc / static_cast<double>(members_.size());
  }

 private:
  std::vector<Predictor> members_;
};

class FunctionPredictor final : public PredictorImpl {
 public:
  FunctionPredictor(int dim, std::function<double(const Eigen::VectorXd&)> fn)
      : dim_(dim), fn_(std::move(fn)) {}
  double predict(const Eigen::Ref<const Eigen::VectorXd>& y) const override {
    return fn_(Eigen::VectorXd(y));
  }
  int dim() const override { return dim_; }
  PredictorKind kind() const override { return PredictorKind::custom; }

 private:
  int dim_;
  std::function<double(const Eigen::VectorXd&)> fn_;
};

}  // namespace

Predictor Predictor::linear(Eigen::VectorXd beta) {
  if (beta.size() < 1) throw std::invalid_argument("linear predictor needs p >= 1");
  return Predictor(std::make_shared<LinearPredictor>(std::move(beta)));
}

Predictor Predictor::ensemble(std::vector<Predictor> members) {
  if (members.empty()) throw std::invalid_argument("ensemble needs at least one member");
  for (const auto& m : members)
    if (m.dim() != members.front().dim())
      throw std::invalid_argument("ensemble members differ in dimension");
  return Predictor(std::make_shared<EnsemblePredictor>(std::move(members)));
}

Predictor Predictor::from_function(int dim, std::function<double(const Eigen::VectorXd&)> fn) {
  return Predictor(std::make_shared<FunctionPredictor>(dim, std::move(fn)));
}

double Predictor::operator()(const Eigen::Ref<const Eigen::VectorXd>& y) const {
  if (y.size() != impl_->dim())
    throw std::invalid_argument("predict: output has dimension " + std::to_string(y.size()) +
                                ", predictor expects " + std::to_string(impl_->dim()));
  return impl_->predict(y);
}

double predict(const Predictor& g, const Eigen::Ref<const Eigen::VectorXd>& y) { return g(y); }

}  // namespace gmilearn
