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

#include "gmilearn/config.hpp"

using namespace gmilearn;

TEST_CASE("nested and dotted keys are equivalent") {
  const auto a = parse_experiment_config(R"({
    "kind": "simo_onebit_dithered", "h": [0.6, 0.8], "sigma2": 1, "P": 50, "alpha": 1.34,
    "train": {"L": 400, "Q": 4}, "lfit": {"xi1": 1.003, "xi2": 0.987},
    "regressor": {"kind": "ridge", "lambda": 100},
    "mc": {"trials": 10, "seed": 77}, "eval": {"samples": 5000, "method": "monte_carlo"}
  })");
  const auto b = parse_experiment_config(R"({
    "kind": "simo_onebit_dithered", "h": [0.6, 0.8], "P": 50, "alpha": 1.34,
    "train.L": 400, "train.Q": 4, "lfit.xi1": 1.003, "lfit.xi2": 0.987,
    "regressor.kind": "ridge", "regressor.lambda": 100,
    "mc.trials": 10, "mc.seed": 77, "eval.samples": 5000, "eval.method": "monte_carlo"
  })");
  for (const auto* c : {&a, &b}) {
    CHECK(c->channel.kind == ChannelKind::simo_onebit_dithered);
    CHECK(c->channel.P == 50.0);
    CHECK(c->channel.b.isApprox(dither_biases(c->channel.h, 50.0, 1.34)));
    CHECK(c->L == 400);
    CHECK(c->Q == 4);
    CHECK(c->xi1 == 1.003);
    CHECK(c->xi2 == 0.987);
    CHECK(c->regressor.lambda == 100.0);
    CHECK(c->trials == 10);
    CHECK(c->seed == 77);
    CHECK(c->eval_samples == 5000);
    CHECK(c->eval_method == EvalMethod::monte_carlo);
  }
}

TEST_CASE("snr_db sets the power") {
  const auto c = parse_experiment_config(R"({"kind": "simo_linear", "h": [2.0], "snr_db": 20})");
  CHECK(c.channel.P == doctest::Approx(25.0));
  const auto awgn = parse_experiment_config(R"({"kind": "awgn", "snr_db": 10})");
  CHECK(awgn.channel.P == doctest::Approx(10.0));
}

TEST_CASE("lambda grids, sweep lists and kernels") {
  const auto c = parse_experiment_config(R"({
    "kind": "simo_onebit", "h": [1, 0.5],
    "regressor": {"kind": "kernel", "kernel": "tricube", "lambda": [1.0, 2.2, 2.8]},
    "sweep": {"snr_db": [0, 10], "kinds": ["simo_linear", "simo_onebit"]}
  })");
  CHECK(c.regressor.kind == RegressorKind::kernel);
  CHECK(c.regressor.kernel == KernelKind::tricube);
  CHECK(c.lambda_grid == std::vector<double>{1.0, 2.2, 2.8});
  CHECK(c.regressor.lambda == 1.0);
  CHECK(c.sweep_snr_db == std::vector<double>{0.0, 10.0});
  CHECK(c.sweep_kinds == std::vector<ChannelKind>{ChannelKind::simo_linear, ChannelKind::simo_onebit});
}

TEST_CASE("bad configs name the problem") {
  auto message = [](const char* text) {
    try {
      (void)parse_experiment_config(text);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("{").find("not valid JSON") != std::string::npos);
  CHECK(message("[1]").find("object") != std::string::npos);
  CHECK(message(R"({"kind": "simo_onebit_dithered", "h": [1], "b": [0.1]})").find("'b'") != std::string::npos);
  CHECK(message(R"({"kind": "simo_linear"})").find("'h'") != std::string::npos);
  CHECK(message(R"({"kind": "quantum"})").find("quantum") != std::string::npos);
  CHECK(message(R"({"train": {"L": "many"}})").find("train.L") != std::string::npos);
  CHECK(message(R"({"eval": {"method": "guess"}})").find("eval.method") != std::string::npos);
  CHECK(message(R"({"mc": {"trials": 0}})") != "no error");
  CHECK(message(R"({"P": -1})") != "no error");
  CHECK_THROWS_AS(load_experiment_config("/nonexistent/config.json"), std::invalid_argument);
}
