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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pursuit/core.hpp"
#include "pursuit/evader.hpp"
#include "pursuit/strategy.hpp"

namespace pursuit {

// State at the end of a step; controls are the ones held over the step.
struct TraceStep {
  double t = 0.0;
  std::vector<Vec2> pursuers;
  Vec2 evader;
  std::vector<Vec2> pursuer_controls;
  Vec2 evader_control;
  std::vector<EnergyPair> pursuer_energy;
  EnergyPair evader_energy{0.0, 0.0};
  std::optional<std::size_t> active;  // window owner during the step
  Phase phase = Phase::kPreAlign;     // its phase during the step
};

struct SimulationTrace {
  std::vector<TraceStep> steps;
  std::vector<TraceEvent> events;
  std::vector<WindowRecord> windows;
};

struct CaptureReport {
  bool captured = false;
  std::optional<double> capture_time;
  std::optional<std::size_t> capturing_pursuer;  // 0-based
  double T_bound = 0.0;
  double dt = 0.0;
  bool hypothesis_holds = true;
  bool guarantee_violated = false;
  std::string policy;
  std::vector<WindowRecord> windows;
  std::vector<EnergyLedger> pursuer_ledgers;
  EnergyLedger evader_ledger;
  std::size_t boundary_stops = 0;
  std::size_t projections = 0;
};

struct RunResult {
  DerivedParams params;
  SimulationTrace trace;
  CaptureReport report;
};

struct GameState {
  double t = 0.0;
  std::vector<PlayerState> pursuers;
  PlayerState evader;
};

struct StepOutcome {
  std::vector<std::size_t> projected_pursuers;
  bool evader_projected = false;
};

// Advances every player by control * dt (exact for piecewise-constant
// controls), charges ledgers, and projects anyone who left N by more than
// boundary_tol back onto it. Throws AdmissibilityError on overdraft.
StepOutcome step(GameState& state, std::span<const Vec2> pursuer_controls,
                 Vec2 evader_control, double dt, const ConvexRegion& region,
                 double boundary_tol);

// Gap y_1 - x_i1 is linear over the step; returns the time it reaches zero.
std::optional<double> detect_crossing(double gap_prev, double gap_next, double t,
                                      double dt);

struct CaptureHit {
  std::size_t pursuer = 0;
  double t = 0.0;
};

// Earliest time in [t, t + h] at which some pursuer comes within `tol` of the
// evader, all players moving linearly. Ties go to the lower index.
std::optional<CaptureHit> detect_capture(std::span<const Vec2> pursuers,
                                         std::span<const Vec2> pursuer_controls,
                                         Vec2 evader, Vec2 evader_control,
                                         double t, double h, double tol);

// Plays the game to capture or to T_bound + dt. Deterministic given params
// and the policy's seed.
RunResult run(const DerivedParams& params, EvaderPolicy& policy);

RunResult run(const GameConfig& config, const PolicySpec& policy,
              ValidateOptions options = {});

}  // namespace pursuit
