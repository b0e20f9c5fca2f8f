// Copyright 2026 The Pursuit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace pursuit {

// Invalid scenario: bad region, non-positive budget, start outside N, ...
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The sufficiency condition (sum of pursuer energies exceeds the evader's on
// some axis) fails, or holds only on an axis the region cannot support.
class HypothesisError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Iterative geometry solve did not converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A ledger would be overdrawn past its allowance. Always a bug in whichever
// side produced the control.
class AdmissibilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pursuit
