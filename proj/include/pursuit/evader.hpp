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
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "pursuit/core.hpp"
#include "pursuit/strategy.hpp"

namespace pursuit {

struct IdlePolicy {
  bool operator==(const IdlePolicy&) const = default;
};

// Fresh uniform control every step, |v_j| <= speed_factor * sqrt(sigma_j^2 / T_bound).
struct RandomAdmissiblePolicy {
  double speed_factor = 2.0;

  bool operator==(const RandomAdmissiblePolicy&) const = default;
};

// Runs from the active pursuer, spreading the remaining energy over the
// remaining horizon.
struct GreedyFleePolicy {
  bool operator==(const GreedyFleePolicy&) const = default;
};

// Spends (1 + overdraw_fraction) sigma_i1^2 on the chase axis during the
// mirror phase of each window while budget lasts, idle otherwise.
struct WindowSplitterPolicy {
  double overdraw_fraction = 0.05;

  bool operator==(const WindowSplitterPolicy&) const = default;
};

// Slides along the boundary away from the active pursuer.
struct BoundaryHuggerPolicy {
  bool operator==(const BoundaryHuggerPolicy&) const = default;
};

using PolicySpec = std::variant<IdlePolicy, RandomAdmissiblePolicy, GreedyFleePolicy,
                                WindowSplitterPolicy, BoundaryHuggerPolicy>;

std::string_view policy_name(const PolicySpec& spec);

// One default-configured instance of every kind, in declaration order.
std::vector<PolicySpec> all_policies();

struct EvaderObservation {
  double t = 0.0;
  double h = 0.0;  // the control is held for at most h
  Vec2 position;
  const EnergyLedger* ledger = nullptr;
  std::span<const PlayerState> pursuers;
  std::span<const PursuerPhaseMachine> machines;
  std::optional<std::size_t> active;
  const DerivedParams* params = nullptr;
};

// Caps each coordinate by the remaining energy, then pulls the step back into
// N (projection followed by a uniform shrink toward the current position, so
// both constraints hold together). `position` must lie in N.
Vec2 clamp_admissible(Vec2 desired, Vec2 position, const EnergyLedger& ledger,
                      const ConvexRegion& region, double h);

// Chase-axis energy the window splitter plans to spend in each window.
std::vector<double> splitter_allotments(const DerivedParams& params,
                                        double overdraw_fraction);

// Windows whose planned spend exceeds sigma_i1^2.
std::vector<bool> planned_overdrawn_windows(const DerivedParams& params,
                                            double overdraw_fraction);

class EvaderPolicy {
 public:
  EvaderPolicy(PolicySpec spec, std::uint64_t seed);

  // Admissible control for the next step; keeps the evader inside N.
  Vec2 control(const EvaderObservation& obs);

  const PolicySpec& spec() const { return spec_; }

 private:
  Vec2 desired(const EvaderObservation& obs);
  Vec2 splitter_desired(const EvaderObservation& obs, double fraction);

  PolicySpec spec_;
  std::mt19937_64 rng_;

  // window splitter state
  std::vector<double> allotments_;
  std::optional<std::size_t> window_;
  double window_baseline_ = 0.0;
  double anchor_ = 0.0;
};

}  // namespace pursuit
