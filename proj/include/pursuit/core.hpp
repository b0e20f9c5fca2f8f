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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pursuit/geometry.hpp"

namespace pursuit {

// Per-coordinate energies (integral of u_j^2 dt), index 0 and 1.
using EnergyPair = std::array<double, 2>;

// Relative overdraft tolerated on any ledger to absorb round-off.
inline constexpr double kEnergyAllowance = 1e-9;

inline constexpr double kDefaultBoundaryTol = 1e-7;

// Running account of consumed energy against a per-coordinate budget.
class EnergyLedger {
 public:
  EnergyLedger() = default;
  explicit EnergyLedger(EnergyPair budget) : budget_(budget) {}

  const EnergyPair& consumed() const { return consumed_; }
  const EnergyPair& budget() const { return budget_; }
  double consumed(int j) const { return consumed_[j]; }
  double budget(int j) const { return budget_[j]; }
  double remaining(int j) const;
  double allowance(int j) const { return kEnergyAllowance * budget_[j]; }

  // Would charging control * dt keep every coordinate within budget plus
  // allowance?
  bool can_afford(Vec2 control, double dt) const;

  // e_j += u_j^2 dt. On overdraft nothing is charged and false is returned;
  // callers clamp or zero the control beforehand.
  [[nodiscard]] bool charge(Vec2 control, double dt);

  bool within_budget() const;

 private:
  EnergyPair consumed_{0.0, 0.0};
  EnergyPair budget_{0.0, 0.0};
};

struct PlayerState {
  Vec2 position;
  EnergyLedger ledger;
};

// Scenario as the user states it. Positions are world coordinates. Budget
// components refer to the diametral frame axes: index 0 along the diameter,
// index 1 across it.
struct GameConfig {
  ConvexRegion region = ConvexRegion::ellipse({0.0, 0.0}, 1.0, 1.0);
  std::vector<Vec2> pursuer_positions;
  std::vector<EnergyPair> pursuer_budgets;  // (rho_i1^2, rho_i2^2)
  Vec2 evader_position;
  EnergyPair evader_budget{0.0, 0.0};  // (sigma_1^2, sigma_2^2)
  std::optional<double> dt;           // default: 1e-2 * min stage time
  std::optional<double> capture_tol;  // default: 1e-6 * d
  double boundary_tol = kDefaultBoundaryTol;
  std::uint64_t rng_seed = 0;

  std::size_t pursuer_count() const { return pursuer_positions.size(); }

  bool operator==(const GameConfig&) const = default;
};

// Coordinates the strategy runs in. Starting from the diametral frame, the
// axes are optionally swapped so the chase axis is always x, then shifted so
// the spine (the chord the pursuers line up on) is y = 0.
struct WorkingFrame {
  Frame frame;
  bool swapped = false;
  double drive_offset = 0.0;

  Vec2 to_working(Vec2 world) const;
  Vec2 to_world(Vec2 working) const;
};

struct DerivedParams {
  int axis = 1;  // diametral-frame axis (1 or 2) the chase runs along
  bool hypothesis_holds = true;
  EnergyPair margin{0.0, 0.0};  // sum_i rho_ij^2 - sigma_j^2 per frame axis

  WorkingFrame frame;
  ConvexRegion region = ConvexRegion::ellipse({0.0, 0.0}, 1.0, 1.0);  // N, working coordinates
  double region_d = 0.0;  // diameter of N
  double region_c = 0.0;  // max |eta| in the diametral frame

  std::vector<Vec2> pursuer_start;  // working coordinates
  Vec2 evader_start;
  std::vector<EnergyPair> pursuer_budgets;  // working axes (chase, drive)
  EnergyPair evader_budget{0.0, 0.0};

  double rho1 = 0.0;                  // sqrt(sum_i rho_i1^2)
  std::vector<double> sigma_i1;       // sigma_1 / rho_1 * rho_i1
  std::vector<double> sigma_i1_sq;    // sigma_1^2 rho_i1^2 / rho_1^2
  double d = 0.0;                     // bound on any chase distance
  double c = 0.0;                     // max |drive coordinate| over N
  double T_pre = 0.0;
  bool prealign_used = false;
  std::vector<double> rho_i2_effective;
  std::vector<double> t_i1;
  std::vector<double> t_i2;
  std::vector<double> theta_max;  // latest possible window starts
  double T_bound = 0.0;

  double dt = 0.0;
  double capture_tol = 0.0;
  double boundary_tol = kDefaultBoundaryTol;
  std::uint64_t rng_seed = 0;

  std::size_t pursuer_count() const { return pursuer_start.size(); }
  double rho_i2_effective_sq(std::size_t i) const {
    return rho_i2_effective[i] * rho_i2_effective[i];
  }
};

struct ValidateOptions {
  // Run even when the sufficiency condition fails; no guarantee is asserted.
  bool exploratory = false;
};

// Checks the config, picks the chase axis, and computes every derived
// quantity. Throws ConfigError on invalid input and HypothesisError when the
// sufficiency condition fails (unless exploratory).
DerivedParams validate(const GameConfig& config, ValidateOptions options = {});

// T_pre = max_i 4 eta_i^2 / rho_i2^2 over pursuers off the spine.
double prealign_duration(const std::vector<Vec2>& starts,
                         const std::vector<EnergyPair>& budgets);

// x-coordinate (in the given coordinates) of a vertical chord of `region`
// spanning its whole vertical extent, if one exists.
std::optional<double> full_height_spine(const ConvexRegion& region);

}  // namespace pursuit
