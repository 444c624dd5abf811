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

#include <stdexcept>
#include <string>

namespace gmilearn {

enum class NumericErrc {
  singular_moment_matrix,
  singular_system,
  degenerate_posterior,
  dimension_too_large,
  zero_predictor,
  no_valid_trials,
  too_few_samples,
};

/// Raised when a computation is well-posed but numerically unusable.
class NumericError : public std::runtime_error {
 public:
  NumericError(NumericErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  NumericErrc code() const noexcept { return code_; }

 private:
  NumericErrc code_;
};

}  // namespace gmilearn
