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

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "pursuit/harness.hpp"

namespace pursuit {

inline constexpr int kExitCaptured = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitGuaranteeViolated = 2;
inline constexpr int kExitNoCapture = 3;  // exploratory run, no guarantee

struct RunOverrides {
  std::optional<double> dt;
  std::optional<std::filesystem::path> trace;   // NDJSON
  std::optional<std::filesystem::path> csv;
  std::optional<std::filesystem::path> report;  // JSON
  bool exploratory = false;
};

int cmd_run(const std::filesystem::path& scenario_path, const RunOverrides& overrides,
            std::ostream& out, std::ostream& err);

// Zero when every run passes; kExitGuaranteeViolated otherwise.
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

int cmd_params(const std::filesystem::path& scenario_path, bool exploratory,
               std::ostream& out, std::ostream& err);

}  // namespace pursuit
