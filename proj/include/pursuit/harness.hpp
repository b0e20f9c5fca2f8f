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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pursuit/engine.hpp"
#include "pursuit/scenario.hpp"

namespace pursuit {

// Random scenario satisfying the sufficiency condition with relative margin
// >= 5% on the chase axis: 1-5 pursuers, a random ellipse or a 5-16 vertex
// convex polygon, budgets in [0.5, 2], positions uniform in N.
GameConfig sample_config(std::mt19937_64& rng);

// Uniform point of N by rejection from its bounding box.
Vec2 sample_point(const ConvexRegion& region, std::mt19937_64& rng);

// The worked ellipse example: x^2/9 + y^2/4 <= 1, two pursuers on the
// diameter with chase budgets 1 and 1.21, evader chase budget 2.
GameConfig golden_config();

// Golden example plus three scenarios at 0.1% margin with coarse dt.
std::vector<GameConfig> pinned_configs();

struct TraceCheck {
  std::vector<std::string> failures;
  std::optional<double> slack;  // T_bound + dt - capture_time when captured

  bool ok() const { return failures.empty(); }
};

// Each check re-derives its quantity from the recorded steps and appends a
// message per violation.
void check_containment(const RunResult& run, TraceCheck& out);
void check_admissibility(const RunResult& run, TraceCheck& out);
void check_pigeonhole(const RunResult& run, TraceCheck& out);
void check_prealign(const RunResult& run, TraceCheck& out);
void check_time_grid(const RunResult& run, TraceCheck& out);
void check_capture_bound(const RunResult& run, TraceCheck& out);
// The splitter overdraws exactly the windows it planned to. A planned window
// that ended in capture before the burst was spent is exempt.
void check_splitter_windows(const RunResult& run, double overdraw_fraction,
                            TraceCheck& out);

// Chase-axis evader energy spent in each window after its crossing,
// recomputed from the steps.
std::vector<double> window_energies_from_steps(const RunResult& run);

// Every policy-independent check above.
TraceCheck check_run(const RunResult& run);

struct VerifyOptions {
  std::size_t n = 200;
  std::uint64_t seed = 1;
  std::vector<PolicySpec> policies = all_policies();
  bool include_pinned = true;
  std::optional<std::filesystem::path> out_dir;  // failing scenarios
  unsigned threads = 1;
};

struct VerifyFailure {
  Scenario scenario;  // shrunk
  std::vector<std::string> messages;
  std::optional<std::filesystem::path> file;
};

struct VerifySummary {
  std::size_t runs = 0;
  std::size_t captures = 0;
  std::size_t passed = 0;
  std::optional<double> worst_slack;
  std::vector<VerifyFailure> failures;

  bool ok() const { return failures.empty() && passed == runs; }
};

// Runs one scenario end to end with every check, the splitter one included;
// exceptions become failures.
TraceCheck check_scenario(const Scenario& scenario);

VerifySummary check_capture_guarantee(const VerifyOptions& options);

// Greedily simplifies a failing scenario (drops pursuers, drops polygon
// vertices, coarsens dt) while `still_fails` holds.
Scenario shrink(Scenario scenario,
                const std::function<bool(const Scenario&)>& still_fails);

}  // namespace pursuit
