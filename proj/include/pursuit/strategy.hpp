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
#include <string_view>
#include <vector>

#include "pursuit/core.hpp"
#include "pursuit/geometry.hpp"

namespace pursuit {

enum class Phase { kPreAlign, kIdle, kHorizontalChase, kMirrorAndDrive, kDone, kFailed };

std::string_view to_string(Phase phase);

enum class EventKind {
  kPrealignDone,
  kWindowStart,
  kCrossing,
  kWindowFailed,
  kBoundaryStop,
  kAlignmentLost,
  kCapture,
  kBudgetExhausted,
  kProjection,
};

std::string_view to_string(EventKind kind);

struct TraceEvent {
  double t = 0.0;
  EventKind kind = EventKind::kCapture;
  std::optional<std::size_t> pursuer;  // 0-based; none for evader events
};

enum class WindowOutcome { kNotReached, kOpen, kCaptured, kFailed };

std::string_view to_string(WindowOutcome outcome);

// Bookkeeping for the interval [theta_i, theta_{i+1}] owned by one pursuer.
struct WindowRecord {
  double theta = 0.0;
  std::optional<double> tau_i1;
  std::optional<double> tau_i2;
  std::optional<double> theta_next;
  WindowOutcome outcome = WindowOutcome::kNotReached;
  double window_v1_energy = 0.0;  // evader chase-axis energy after the crossing
  double sigma_i1_sq = 0.0;
  bool budget_guard_tripped = false;
  bool alignment_lost = false;
};

// Per-pursuer stage tracker. Legal transitions:
//   PreAlign -> Idle -> HorizontalChase -> MirrorAndDrive -> Done | Failed
// plus HorizontalChase -> Done (evader caught on the spine) and
// HorizontalChase -> Failed (no crossing in time). Anything else throws
// std::logic_error.
class PursuerPhaseMachine {
 public:
  Phase phase() const { return phase_; }
  double window_start() const { return window_start_; }
  const std::optional<double>& tau_i1() const { return tau_i1_; }
  int chase_sign() const { return chase_sign_; }
  int vertical_sign() const { return vertical_sign_; }

  void finish_prealign();
  // chase_gap = y_1 - x_i1 at theta_i; its sign fixes the stage-1 direction.
  void start_window(double theta, double chase_gap);
  // drive_gap = y_2 - x_i2 at the crossing; its sign fixes the drive direction.
  void enter_mirror(double t, double drive_gap);
  void finish(bool captured);

 private:
  void require(std::initializer_list<Phase> allowed, const char* action) const;

  Phase phase_ = Phase::kPreAlign;
  double window_start_ = 0.0;
  std::optional<double> tau_i1_;
  int chase_sign_ = 0;
  int vertical_sign_ = 0;
};

int sign(double v);

// Constant drive back to the spine, (0, -eta0 / T_pre); zero when T_pre = 0.
Vec2 prealign_control(double eta0, double T_pre);

// (sign * d / t_i1, 0).
Vec2 stage1_control(int chase_sign, double d, double t_i1);

struct Stage2Input {
  Vec2 pursuer;
  Vec2 evader;
  Vec2 evader_control;
  double h = 0.0;  // length of the step the control is held for
  int vertical_sign = 0;
  double c = 0.0;
  double t_i2 = 0.0;
  const EnergyLedger* ledger = nullptr;
  const ConvexRegion* region = nullptr;
  double boundary_tol = kDefaultBoundaryTol;
};

struct Stage2Control {
  Vec2 control;
  bool boundary_stop = false;
  bool guard_tripped = false;
};

// Mirror the evader on the chase axis and drive toward it at c / t_i2.
// If the mirror would overdraw the chase budget, u_1 = 0 and guard_tripped.
// On the boundary band the control is zeroed when the step would leave N and
// the drive gap does not close within the step.
Stage2Control stage2_control(const Stage2Input& in);

// Sequences the pre-alignment phase and one window per pursuer, activating
// pursuer i+1 once pursuer i has captured, failed, or reached theta_{i+1}.
class Scheduler {
 public:
  explicit Scheduler(const DerivedParams& params);

  std::span<const PursuerPhaseMachine> machines() const { return machines_; }
  const std::vector<WindowRecord>& windows() const { return windows_; }
  std::optional<std::size_t> active() const { return active_; }
  bool prealigning() const { return prealigning_; }

  // Applies every transition due at or before t.
  void advance_to(double t, std::span<const PlayerState> pursuers, Vec2 evader,
                  std::vector<TraceEvent>& events);

  // Earliest future time a scheduled transition falls due.
  double next_deadline() const;

  struct Plan {
    std::vector<Vec2> controls;
    bool boundary_stop = false;
    bool guard_tripped = false;
  };

  // Controls for every pursuer over [t, t + h] given the evader's control.
  Plan controls(double h, std::span<const PlayerState> pursuers, Vec2 evader,
                Vec2 evader_control, const ConvexRegion& region) const;

  // Bookkeeping after the engine advanced `s` seconds (s <= h) ending at t.
  void commit_step(double t, double s, Vec2 evader_control, const Plan& plan,
                   std::vector<TraceEvent>& events);

  // Active pursuer's chase axis met the evader at t.
  void on_crossing(double t, double drive_gap, std::vector<TraceEvent>& events);

  void on_capture(double t, std::size_t pursuer);

 private:
  void activate(std::size_t i, double t, std::span<const PlayerState> pursuers,
                Vec2 evader, std::vector<TraceEvent>& events);
  void close_active(double t, std::span<const PlayerState> pursuers, Vec2 evader,
                    std::vector<TraceEvent>& events);

  const DerivedParams* params_;
  std::vector<PursuerPhaseMachine> machines_;
  std::vector<WindowRecord> windows_;
  std::optional<std::size_t> active_;
  bool prealigning_ = true;
  bool finished_ = false;
};

}  // namespace pursuit
