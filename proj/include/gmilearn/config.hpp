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

#include <string>
#include <string_view>

#include "gmilearn/harness.hpp"

namespace gmilearn {

/// Parses a JSON experiment config. Keys may be nested objects
/// ({"train": {"L": 800}}) or flat dotted names ({"train.L": 800}).
///
/// Channel: kind, h, sigma2, P (or snr_db), alpha. Dither biases are derived.
/// Training/LFIT: train.L, train.Q, lfit.xi1, lfit.xi2.
/// Regressor: regressor.kind, regressor.lambda, regressor.kernel.
/// Monte Carlo: mc.trials, mc.seed, eval.samples, eval.method.
/// Other: quad.order, clt.nu, clt.target_poe, sweep.snr_db, sweep.kinds.
/// Throws std::invalid_argument with the offending key on bad input.
ExperimentConfig parse_experiment_config(std::string_view json_text);
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace gmilearn
