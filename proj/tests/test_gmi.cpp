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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "gmilearn/errors.hpp"
#include "gmilearn/gmi.hpp"

using namespace gmilearn;

TEST_CASE("GMI from delta") {
  CHECK(gmi_from_delta(0.0) == 0.0);
  CHECK(gmi_from_delta(0.5) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK(gmi_from_delta(0.99) == doctest::Approx(0.5 * std::log(100.0)).epsilon(1e-13));
  bool clamped = false;
  const double top = gmi_from_delta(1.2, &clamped);
  CHECK(clamped);
  CHECK(top == doctest::Approx(-0.5 * std::log(1e-12)).epsilon(1e-4));
  CHECK_THROWS_AS(gmi_from_delta(-0.1), std::domain_error);
  CHECK(nats_to_bits(std::log(2.0)) == doctest::Approx(1.0));
}

TEST_CASE("simo linear GMIs equal capacity") {
  const ChannelModel m = ChannelModel::simo_linear(reference_h8() / reference_h8().norm(), 100.0, 1.0);
  CHECK(gmi_lmmse(m).gmi_nats == doctest::Approx(0.5 * std::log(101.0)).epsilon(1e-13));
  CHECK(gmi_mmse(m).gmi_nats == doctest::Approx(0.5 * std::log(101.0)).epsilon(1e-13));
}

TEST_CASE("Bussgang SNR") {
  Eigen::VectorXd h = Eigen::VectorXd::Ones(1);
  // Linear scalar channel: the Bussgang SNR is the channel SNR.
  CHECK(bussgang_snr(ChannelModel::simo_linear(h, 7.0, 1.0)) == doctest::Approx(7.0).epsilon(1e-12));
  const ChannelModel q = ChannelModel::simo_onebit(h, 100.0, 1.0);
  const double d = 2.0 / std::numbers::pi * 100.0 / 101.0;
  CHECK(bussgang_snr(q) == doctest::Approx(d / (1.0 - d)).epsilon(1e-9));
  CHECK(0.5 * std::log1p(bussgang_snr(q)) == doctest::Approx(gmi_lmmse(q).gmi_nats).epsilon(1e-12));
  CHECK_THROWS_AS(bussgang_snr(ChannelModel::simo_linear(reference_h8(), 1.0, 1.0)), std::invalid_argument);
}

TEST_CASE("rate objective maximizer against the closed-form root") {
  // Stationarity: (B - A - 1/2) s^2 + s/2 + A = 0 with s = 1 + gamma.
  for (auto [A, B] : {std::pair{0.6, 0.7}, std::pair{0.505, 1.0}, std::pair{2.0, 1.5}, std::pair{0.01, 0.3}}) {
    const double c = B - A - 0.5;
    const double s = (-0.5 - std::sqrt(0.25 - 4.0 * c * A)) / (2.0 * c);
    const RateMaximum r = maximize_rate_objective(A, B);
    CHECK(r.gamma == doctest::Approx(s - 1.0).epsilon(1e-7));
    CHECK(r.value == doctest::Approx(rate_objective(s - 1.0, A, B)).epsilon(1e-12));
  }
}

TEST_CASE("rate objective edge cases") {
  CHECK(maximize_rate_objective(0.5, 0.0).value == 0.0);
  CHECK(maximize_rate_objective(0.5, -1.0).gamma == 0.0);
  // Unbounded when the slope at infinity is non-negative.
  CHECK(maximize_rate_objective(0.5, 1.0).value == std::numeric_limits<double>::infinity());
  CHECK(rate_objective(0.0, 3.0, 2.0) == 0.0);
}

TEST_CASE("golden section on a parabola") {
  const double x = golden_section_argmax([](double t) { return -(t - 1.7) * (t - 1.7); }, 0.0, 10.0, 1e-12);
  CHECK(x == doctest::Approx(1.7).epsilon(1e-10));
}

TEST_CASE("scenario A with the optimal scaling reproduces scenario B") {
  const MomentPair m{0.8, 1.0, 1.0};
  const GmiResult a = gmi_scenario_A(m, optimal_scaling(m));
  const GmiResult b = gmi_scenario_B(m);
  CHECK(b.delta == doctest::Approx(0.64));
  CHECK(a.gmi_nats == doctest::Approx(b.gmi_nats).epsilon(1e-12));
  CHECK(a.gamma_opt == doctest::Approx(0.64 / 0.36).epsilon(1e-8));
  CHECK(b.a_opt == doctest::Approx(0.8));
  CHECK_THROWS_AS(gmi_scenario_A(m, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(gmi_scenario_B(MomentPair{0.0, 0.0, 1.0}), NumericError);
}

TEST_CASE("scenario A with the wrong sign of a yields zero") {
  const MomentPair m{0.8, 1.0, 1.0};
  CHECK(gmi_scenario_A(m, -0.8).gmi_nats == 0.0);
}

TEST_CASE("lower bound on scenario A") {
  CHECK(lower_bound_A(0.5, 0.5) == doctest::Approx(0.5 * std::log(2.0)));
  CHECK(lower_bound_A(0.5, 0.6) > lower_bound_A(0.5, 0.5));
  CHECK_THROWS_AS(lower_bound_A(1.0, 0.5), std::domain_error);
}

TEST_CASE("exact moments of a linear predictor on a linear channel") {
  const ChannelModel m = ChannelModel::simo_linear(reference_h8(), 100.0, 1.0);
  Eigen::VectorXd beta = Eigen::VectorXd::LinSpaced(8, -0.2, 0.5);
  MomentPair exact;
  REQUIRE(exact_moments(m, Predictor::linear(beta), exact));
  Rng rng(9);
  const DeltaEstimate mc = delta_of_predictor(m, Predictor::linear(beta), 400'000, rng);
  CHECK(std::abs(mc.moments.e_xg - exact.e_xg) < 5.0 * mc.se_xg);
  CHECK(std::abs(mc.moments.e_g2 - exact.e_g2) < 5.0 * mc.se_g2);
  // Nonlinear predictors on continuous outputs have no exact path.
  MomentPair unused;
  CHECK_FALSE(exact_moments(m, Predictor::from_function(8, [](const Eigen::VectorXd& y) { return std::tanh(y[0]); }), unused));
}

TEST_CASE("exact moments on a one-bit channel against Monte Carlo") {
  const ChannelModel m = ChannelModel::simo_onebit_dithered(reference_h8(), 100.0, 1.0, 1.34);
  const Predictor g = Predictor::from_function(8, [](const Eigen::VectorXd& y) { return y.sum() + 0.3 * y[0] * y[3]; });
  MomentPair exact;
  REQUIRE(exact_moments(m, g, exact));
  Rng rng(10);
  const DeltaEstimate mc = delta_of_predictor(m, g, 400'000, rng);
  CHECK(std::abs(mc.moments.e_xg - exact.e_xg) < 5.0 * mc.se_xg);
  CHECK(std::abs(mc.moments.e_g2 - exact.e_g2) < 5.0 * mc.se_g2);
}

TEST_CASE("MMSE processing attains the largest delta") {
  const ChannelModel m = ChannelModel::simo_onebit_dithered(reference_h8(), 100.0, 1.0, 1.34);
  const double d_mmse = gmi_mmse(m).delta;
  const double d_lmmse = gmi_lmmse(m).delta;
  CHECK(d_mmse > d_lmmse);
  MomentPair ex;
  REQUIRE(exact_moments(m, MmseEstimator(m).as_predictor(), ex));
  CHECK(ex.delta() == doctest::Approx(d_mmse).epsilon(1e-10));
}

TEST_CASE("delta_of_predictor rejects degenerate inputs") {
  const ChannelModel m = ChannelModel::awgn(1.0, 1.0);
  Rng rng(1);
  CHECK_THROWS_AS(delta_of_predictor(m, Predictor::linear(Eigen::VectorXd::Zero(1)), 1000, rng), NumericError);
  CHECK_THROWS_AS(delta_of_predictor(m, Predictor::linear(Eigen::VectorXd::Ones(1)), 10, rng), std::invalid_argument);
}
