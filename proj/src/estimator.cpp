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

#include "gmilearn/estimator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "gmilearn/errors.hpp"

namespace gmilearn {

namespace {

constexpr double kMaxCondition = 1e12;
const double kLogTiny = std::log(1e-300);

struct LogSums {
  double log_scale;  // max log-likelihood over nodes
  double num;        // sum w u exp(l - log_scale)
  double den;        // sum w exp(l - log_scale)
};

LogSums reduce(const QuadratureRule& rule, const Eigen::VectorXd& loglik) {
  const double m = loglik.maxCoeff();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double w = rule.weights[k] * std::exp(loglik[static_cast<Eigen::Index>(k)] - m);
    num += w * rule.nodes[k];
    den += w;
  }
  return {m, num, den};
}

PatternPosterior to_posterior(const LogSums& s) {
  PatternPosterior out;
  out.probability = std::exp(s.log_scale) * s.den;
  out.mean = s.den > 0.0 ? s.num / s.den : 0.0;
  return out;
}

}  // namespace

Eigen::VectorXd pattern_output(int p, std::uint32_t index) {
  Eigen::VectorXd y(p);
  for (int i = 0; i < p; ++i) y[i] = (index >> i) & 1u ? 1.0 : -1.0;
  return y;
}

std::uint32_t pattern_index(const Eigen::Ref<const Eigen::VectorXd>& y) {
  std::uint32_t index = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (y[i] > 0.0) index |= 1u << i;
  return index;
}

PosteriorIntegrator::PosteriorIntegrator(ChannelModel model, int quad_order)
    : model_(std::move(model)), rule_(transition_rule(model_, quad_order)) {
  const Eigen::Index p = model_.h.size();
  const auto K = static_cast<Eigen::Index>(rule_.size());
  const double sigma = model_.sigma();
  log_plus_.resize(p, K);
  log_minus_.resize(p, K);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index k = 0; k < K; ++k) {
      const double arg = (model_.h[i] * rule_.nodes[static_cast<std::size_t>(k)] + model_.b[i]) / sigma;
      log_plus_(i, k) = log_normal_cdf(arg);
      log_minus_(i, k) = log_normal_cdf(-arg);
    }
  }
}

double PosteriorIntegrator::conditional_output_mean(int i, std::size_t k) const {
  const auto col = static_cast<Eigen::Index>(k);
  return std::exp(log_plus_(i, col)) - std::exp(log_minus_(i, col));
}

PatternPosterior PosteriorIntegrator::posterior(const Eigen::Ref<const Eigen::VectorXd>& y) const {
  if (y.size() != model_.h.size())
    throw std::invalid_argument("posterior: output dimension mismatch");
  Eigen::VectorXd loglik = Eigen::VectorXd::Zero(log_plus_.cols());
  for (Eigen::Index i = 0; i < y.size(); ++i)
    loglik += (y[i] >= 0.0 ? log_plus_.row(i) : log_minus_.row(i)).transpose();
  const LogSums s = reduce(rule_, loglik);
  if (!(s.den > 0.0) || s.log_scale + std::log(s.den) < kLogTiny)
    throw NumericError(NumericErrc::degenerate_posterior,
                       "posterior: Pr(y) underflows below 1e-300");
  return to_posterior(s);
}

std::vector<PatternPosterior> PosteriorIntegrator::enumerate() const {
  const int p = model_.dim();
  if (p > kMaxEnumerationDim)
    throw NumericError(NumericErrc::dimension_too_large,
                       "enumeration over 2^p patterns needs p <= 20, got p = " +
                           std::to_string(p));
  const std::uint32_t count = 1u << p;
  std::vector<PatternPosterior> out(count);
  // Walk the patterns in Gray-code order so each step flips one component.
  Eigen::VectorXd loglik(log_plus_.cols());
  auto rebuild = [&](std::uint32_t gray) {
    loglik.setZero();
    for (int i = 0; i < p; ++i)
      loglik += ((gray >> i) & 1u ? log_plus_.row(i) : log_minus_.row(i)).transpose();
  };
  rebuild(0);
  out[0] = to_posterior(reduce(rule_, loglik));
  for (std::uint32_t step = 1; step < count; ++step) {
    const std::uint32_t gray = step ^ (step >> 1);
    if (step % 1024 == 0) {
      rebuild(gray);
    } else {
      const int flipped = std::countr_zero(step);
      if ((gray >> flipped) & 1u)
        loglik += (log_plus_.row(flipped) - log_minus_.row(flipped)).transpose();
      else
        loglik += (log_minus_.row(flipped) - log_plus_.row(flipped)).transpose();
    }
    out[gray] = to_posterior(reduce(rule_, loglik));
  }
  return out;
}

SecondMoments second_moments(const ChannelModel& model, const MomentOracle& oracle) {
  model.validate();
  const Eigen::Index p = model.h.size();
  SecondMoments m;
  if (!model.quantized()) {
    m.e_xy = model.P * model.h;
    m.e_yy = model.P * model.h * model.h.transpose() +
             model.sigma2 * Eigen::MatrixXd::Identity(p, p);
    return m;
  }
  m.e_xy = Eigen::VectorXd::Zero(p);
  m.e_yy = Eigen::MatrixXd::Zero(p, p);
  if (oracle.method == MomentOracle::Method::monte_carlo) {
    Rng rng(oracle.seed);
    std::normal_distribution<double> input(0.0, std::sqrt(model.P));
    Eigen::VectorXd y(p);
    for (std::size_t n = 0; n < oracle.samples; ++n) {
      const double x = input(rng);
      sample_into(model, x, rng, y);
      m.e_xy += x * y;
      m.e_yy.noalias() += y * y.transpose();
    }
    m.e_xy /= static_cast<double>(oracle.samples);
    m.e_yy /= static_cast<double>(oracle.samples);
    return m;
  }
  // Components are conditionally independent given x, so every entry is a
  // one-dimensional integral of E[y_i | u] products.
  const PosteriorIntegrator post(model, oracle.quad_order);
  const QuadratureRule& rule = post.rule();
  Eigen::VectorXd cond(p);
  for (std::size_t k = 0; k < rule.size(); ++k) {
    for (Eigen::Index i = 0; i < p; ++i)
      cond[i] = post.conditional_output_mean(static_cast<int>(i), k);
    m.e_xy += rule.weights[k] * rule.nodes[k] * cond;
    m.e_yy.noalias() += rule.weights[k] * cond * cond.transpose();
  }
  m.e_yy.diagonal().setOnes();
  return m;
}

LmmseResult lmmse_predictor(const ChannelModel& model, const MomentOracle& oracle) {
  const SecondMoments m = second_moments(model, oracle);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m.e_yy, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kMaxCondition)
    throw NumericError(NumericErrc::singular_moment_matrix,
                       "lmmse: E[yy'] is singular or has condition number above 1e12");
  LmmseResult out;
  out.beta = m.e_yy.ldlt().solve(m.e_xy);
  out.delta = m.e_xy.dot(out.beta) / model.P;
  out.g = Predictor::linear(out.beta);
  return out;
}

namespace {

class MmsePredictorImpl final : public PredictorImpl {
 public:
  explicit MmsePredictorImpl(MmseEstimator est) : est_(std::move(est)) {}
  double predict(const Eigen::Ref<const Eigen::VectorXd>& y) const override { return est_(y); }
  int dim() const override { return est_.model().dim(); }
  PredictorKind kind() const override { return PredictorKind::analytic_mmse; }
  std::optional<Eigen::VectorXd> linear_coefficients() const override {
    const ChannelModel& m = est_.model();
    if (m.quantized()) return std::nullopt;
    return Eigen::VectorXd(m.P * m.h / (m.P * m.h.squaredNorm() + m.sigma2));
  }

 private:
  MmseEstimator est_;
};

}  // namespace

MmseEstimator::MmseEstimator(const ChannelModel& model, int quad_order) : model_(model) {
  model_.validate();
  if (model_.quantized())
    integrator_ = std::make_shared<const PosteriorIntegrator>(model_, quad_order);
}

double MmseEstimator::operator()(const Eigen::Ref<const Eigen::VectorXd>& y) const {
  if (y.size() != model_.h.size())
    throw std::invalid_argument("mmse_estimate: output dimension mismatch");
  if (!integrator_) {
    // Gaussian posterior: P h'(P hh' + sigma2 I)^-1 y collapses by Woodbury.
    return model_.P * model_.h.dot(y) / (model_.P * model_.h.squaredNorm() + model_.sigma2);
  }
  return integrator_->posterior(y).mean;
}

double MmseEstimator::variance() const {
  if (!integrator_) {
    const double gain = model_.P * model_.h.squaredNorm();
    return model_.P * gain / (gain + model_.sigma2);
  }
  double acc = 0.0;
  for (const auto& pat : integrator_->enumerate()) acc += pat.probability * pat.mean * pat.mean;
  return acc;
}

Predictor MmseEstimator::as_predictor() const {
  return Predictor(std::make_shared<MmsePredictorImpl>(*this));
}

double mmse_estimate(const ChannelModel& model, const Eigen::Ref<const Eigen::VectorXd>& y) {
  return MmseEstimator(model)(y);
}

double var_conditional_mean(const ChannelModel& model, int quad_order) {
  if (model.quantized() && model.dim() > kMaxEnumerationDim)
    throw NumericError(NumericErrc::dimension_too_large,
                       "var_conditional_mean: p > 20 is not enumerable");
  return MmseEstimator(model, quad_order).variance();
}

}  // namespace gmilearn
