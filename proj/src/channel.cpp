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

#include "gmilearn/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gmilearn {

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::awgn:
      return "awgn";
    case ChannelKind::simo_linear:
      return "simo_linear";
    case ChannelKind::simo_onebit:
      return "simo_onebit";
    case ChannelKind::simo_onebit_dithered:
      return "simo_onebit_dithered";
  }
  return "unknown";
}

ChannelKind parse_channel_kind(std::string_view name) {
  if (name == "awgn") return ChannelKind::awgn;
  if (name == "simo_linear") return ChannelKind::simo_linear;
  if (name == "simo_onebit") return ChannelKind::simo_onebit;
  if (name == "simo_onebit_dithered") return ChannelKind::simo_onebit_dithered;
  throw std::invalid_argument("unknown channel kind '" + std::string(name) + "'");
}

ChannelModel ChannelModel::awgn(double P, double sigma2) {
  ChannelModel m;
  m.kind = ChannelKind::awgn;
  m.h = Eigen::VectorXd::Ones(1);
  m.b = Eigen::VectorXd::Zero(1);
  m.P = P;
  m.sigma2 = sigma2;
  m.validate();
  return m;
}

ChannelModel ChannelModel::simo_linear(Eigen::VectorXd h, double P, double sigma2) {
  ChannelModel m;
  m.kind = ChannelKind::simo_linear;
  m.b = Eigen::VectorXd::Zero(h.size());
  m.h = std::move(h);
  m.P = P;
  m.sigma2 = sigma2;
  m.validate();
  return m;
}

ChannelModel ChannelModel::simo_onebit(Eigen::VectorXd h, double P, double sigma2) {
  ChannelModel m = simo_linear(std::move(h), P, sigma2);
  m.kind = ChannelKind::simo_onebit;
  return m;
}

ChannelModel ChannelModel::simo_onebit_dithered(Eigen::VectorXd h, double P, double sigma2,
                                                double alpha) {
  ChannelModel m;
  m.kind = ChannelKind::simo_onebit_dithered;
  m.h = std::move(h);
  m.P = P;
  m.sigma2 = sigma2;
  m.alpha = alpha;
  if (!(P > 0.0)) throw std::invalid_argument("channel: P must be positive");
  m.b = dither_biases(m.h, P, alpha);
  m.validate();
  return m;
}

double ChannelModel::sigma() const { return std::sqrt(sigma2); }

ChannelModel ChannelModel::with_power(double new_P) const {
  ChannelModel m = *this;
  m.P = new_P;
  if (kind == ChannelKind::simo_onebit_dithered) m.b = dither_biases(h, new_P, alpha);
  m.validate();
  return m;
}

ChannelModel ChannelModel::with_snr_db(double snr) const {
  const double linear = std::pow(10.0, snr / 10.0);
  return with_power(linear * sigma2 / h.squaredNorm());
}

void ChannelModel::validate() const {
  if (h.size() < 1) throw std::invalid_argument("channel: h must have at least one entry");
  if (b.size() != h.size()) throw std::invalid_argument("channel: b and h differ in length");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
    throw std::invalid_argument("channel: sigma2 must be positive");
  if (!(P > 0.0) || !std::isfinite(P)) throw std::invalid_argument("channel: P must be positive");
  if (!h.allFinite() || !b.allFinite()) throw std::invalid_argument("channel: non-finite h or b");
  if (kind != ChannelKind::simo_onebit_dithered && !b.isZero(0.0))
    throw std::invalid_argument("channel: dither biases only allowed for the dithered kind");
  if (kind == ChannelKind::awgn && (h.size() != 1 || h[0] != 1.0))
    throw std::invalid_argument("channel: awgn requires h = [1]");
}

TrainingSet TrainingSet::subset(const std::vector<std::size_t>& indices) const {
  TrainingSet out;
  out.x.resize(static_cast<Eigen::Index>(indices.size()));
  out.y.resize(static_cast<Eigen::Index>(indices.size()), y.cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto src = static_cast<Eigen::Index>(indices[i]);
    out.x[static_cast<Eigen::Index>(i)] = x[src];
    out.y.row(static_cast<Eigen::Index>(i)) = y.row(src);
  }
  return out;
}

TrainingSet TrainingSet::slice(std::size_t begin, std::size_t count) const {
  TrainingSet out;
  const auto b = static_cast<Eigen::Index>(begin);
  const auto n = static_cast<Eigen::Index>(count);
  out.x = x.segment(b, n);
  out.y = y.middleRows(b, n);
  return out;
}

void sample_into(const ChannelModel& model, double x, Rng& rng, Eigen::Ref<Eigen::VectorXd> out) {
  std::normal_distribution<double> noise(0.0, model.sigma());
  const Eigen::Index p = model.h.size();
  for (Eigen::Index i = 0; i < p; ++i) {
    const double v = model.h[i] * x + noise(rng) + model.b[i];
    out[i] = model.quantized() ? (v >= 0.0 ? 1.0 : -1.0) : v;
  }
}

Eigen::VectorXd sample(const ChannelModel& model, double x, Rng& rng) {
  Eigen::VectorXd y(model.h.size());
  sample_into(model, x, rng, y);
  return y;
}

TrainingSet draw_training_set(const ChannelModel& model, std::size_t L, Rng& rng) {
  if (L < 1) throw std::invalid_argument("training set: L must be at least 1");
  std::normal_distribution<double> input(0.0, std::sqrt(model.P));
  TrainingSet t;
  t.x.resize(static_cast<Eigen::Index>(L));
  t.y.resize(static_cast<Eigen::Index>(L), model.h.size());
  Eigen::VectorXd y(model.h.size());
  for (Eigen::Index l = 0; l < static_cast<Eigen::Index>(L); ++l) {
    t.x[l] = input(rng);
    sample_into(model, t.x[l], rng, y);
    t.y.row(l) = y.transpose();
  }
  return t;
}

Eigen::VectorXd dither_biases(const Eigen::VectorXd& h, double P, double alpha) {
  if (!(P > 0.0)) throw std::invalid_argument("dither_biases: P must be positive");
  const Eigen::Index p = h.size();
  Eigen::VectorXd b(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    const double level = static_cast<double>(i + 1) / static_cast<double>(p + 1);
    b[i] = alpha * std::sqrt(P) * h[i] * normal_quantile(level);
  }
  return b;
}

double snr_db(const ChannelModel& model) {
  return 10.0 * std::log10(model.h.squaredNorm() * model.P / model.sigma2);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double log_normal_cdf(double x) {
  if (x > -30.0) return std::log(normal_cdf(x));
  // Mills-ratio expansion; the first omitted term is below 2e-12 at x = -30.
  const double inv = 1.0 / (x * x);
  const double series =
      1.0 - inv * (1.0 - 3.0 * inv * (1.0 - 5.0 * inv * (1.0 - 7.0 * inv)));
  return -0.5 * x * x - std::log(-x) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
}

double normal_quantile(double prob) {
  if (!(prob > 0.0 && prob < 1.0))
    throw std::domain_error("normal_quantile: probability must lie in (0, 1)");
  if (prob == 0.5) return 0.0;
  if (prob > 0.5) return -normal_quantile(1.0 - prob);
  double lo = -40.0;
  double hi = 40.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (normal_cdf(mid) < prob)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd reference_h8() {
  Eigen::VectorXd h(8);
  h << 0.3615, 0.2151, 0.2205, 0.6767, 0.5014, 0.1129, 0.1763, 0.1456;
  return h;
}

}  // namespace gmilearn
