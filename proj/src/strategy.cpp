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

#include "pursuit/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pursuit {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kPreAlign: return "prealign";
    case Phase::kIdle: return "idle";
    case Phase::kHorizontalChase: return "horizontal_chase";
    case Phase::kMirrorAndDrive: return "mirror_and_drive";
    case Phase::kDone: return "done";
    case Phase::kFailed: return "failed";
  }
  return "unknown";
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kPrealignDone: return "prealign_done";
    case EventKind::kWindowStart: return "window_start";
    case EventKind::kCrossing: return "crossing";
    case EventKind::kWindowFailed: return "window_failed";
    case EventKind::kBoundaryStop: return "boundary_stop";
    case EventKind::kAlignmentLost: return "alignment_lost";
    case EventKind::kCapture: return "capture";
    case EventKind::kBudgetExhausted: return "budget_exhausted";
    case EventKind::kProjection: return "projection";
  }
  return "unknown";
}

std::string_view to_string(WindowOutcome outcome) {
  switch (outcome) {
    case WindowOutcome::kNotReached: return "not_reached";
    case WindowOutcome::kOpen: return "open";
    case WindowOutcome::kCaptured: return "captured";
    case WindowOutcome::kFailed: return "failed";
  }
  return "unknown";
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

void PursuerPhaseMachine::require(std::initializer_list<Phase> allowed,
                                  const char* action) const {
  if (std::find(allowed.begin(), allowed.end(), phase_) == allowed.end()) {
    throw std::logic_error(std::string("illegal phase transition: ") + action +
                           " from " + std::string(to_string(phase_)));
  }
}

void PursuerPhaseMachine::finish_prealign() {
  require({Phase::kPreAlign}, "finish_prealign");
  phase_ = Phase::kIdle;
}

void PursuerPhaseMachine::start_window(double theta, double chase_gap) {
  require({Phase::kIdle}, "start_window");
  phase_ = Phase::kHorizontalChase;
  window_start_ = theta;
  chase_sign_ = sign(chase_gap);
}

void PursuerPhaseMachine::enter_mirror(double t, double drive_gap) {
  require({Phase::kHorizontalChase}, "enter_mirror");
  phase_ = Phase::kMirrorAndDrive;
  tau_i1_ = t - window_start_;
  vertical_sign_ = sign(drive_gap);
}

void PursuerPhaseMachine::finish(bool captured) {
  require({Phase::kHorizontalChase, Phase::kMirrorAndDrive}, "finish");
  phase_ = captured ? Phase::kDone : Phase::kFailed;
}

Vec2 prealign_control(double eta0, double T_pre) {
  if (!(T_pre > 0.0)) return {0.0, 0.0};
  return {0.0, -eta0 / T_pre};
}

Vec2 stage1_control(int chase_sign, double d, double t_i1) {
  return {chase_sign * d / t_i1, 0.0};
}

Stage2Control stage2_control(const Stage2Input& in) {
  Stage2Control out;
  Vec2 u{in.evader_control.x,
         in.t_i2 > 0.0 ? in.vertical_sign * in.c / in.t_i2 : 0.0};
  if (!in.ledger->can_afford({u.x, 0.0}, in.h)) {
    u.x = 0.0;
    out.guard_tripped = true;
  }
  if (!in.ledger->can_afford({0.0, u.y}, in.h)) u.y = 0.0;

  if (in.region->on_boundary(in.pursuer, in.boundary_tol)) {
    const Vec2 end = in.pursuer + u * in.h;
    const bool aligned =
        std::abs(in.pursuer.x - in.evader.x) <= in.boundary_tol &&
        u.x == in.evader_control.x;
    const double gap0 = in.evader.y - in.pursuer.y;
    const double gap1 = gap0 + (in.evader_control.y - u.y) * in.h;
    const bool closes = aligned && sign(gap1) != sign(gap0);
    if (!closes && !in.region->contains(end, in.boundary_tol)) {
      u = {0.0, 0.0};
      out.boundary_stop = true;
    }
  }
  out.control = u;
  return out;
}

Scheduler::Scheduler(const DerivedParams& params)
    : params_(&params),
      machines_(params.pursuer_count()),
      windows_(params.pursuer_count()) {
  for (std::size_t i = 0; i < windows_.size(); ++i) {
    windows_[i].sigma_i1_sq = params.sigma_i1_sq[i];
  }
}

void Scheduler::activate(std::size_t i, double t,
                         std::span<const PlayerState> pursuers, Vec2 evader,
                         std::vector<TraceEvent>& events) {
  if (i >= machines_.size()) {
    active_.reset();
    finished_ = true;
    return;
  }
  active_ = i;
  WindowRecord& w = windows_[i];
  w.theta = t;
  w.outcome = WindowOutcome::kOpen;
  const Vec2 x = pursuers[i].position;
  const double gap = evader.x - x.x;
  machines_[i].start_window(t, gap);
  events.push_back({t, EventKind::kWindowStart, i});
  if (gap == 0.0) on_crossing(t, evader.y - x.y, events);
}

void Scheduler::close_active(double t, std::span<const PlayerState> pursuers,
                             Vec2 evader, std::vector<TraceEvent>& events) {
  const std::size_t i = *active_;
  PursuerPhaseMachine& mc = machines_[i];
  WindowRecord& w = windows_[i];
  if (mc.phase() == Phase::kHorizontalChase ||
      mc.phase() == Phase::kMirrorAndDrive) {
    mc.finish(false);
    w.outcome = WindowOutcome::kFailed;
    events.push_back({t, EventKind::kWindowFailed, i});
  }
  if (!w.theta_next) w.theta_next = t;
  activate(i + 1, t, pursuers, evader, events);
}

void Scheduler::advance_to(double t, std::span<const PlayerState> pursuers,
                           Vec2 evader, std::vector<TraceEvent>& events) {
  const DerivedParams& p = *params_;
  while (!finished_) {
    if (prealigning_) {
      if (t < p.T_pre) return;
      for (auto& mc : machines_) mc.finish_prealign();
      prealigning_ = false;
      if (p.prealign_used) events.push_back({p.T_pre, EventKind::kPrealignDone, {}});
      activate(0, p.T_pre, pursuers, evader, events);
      continue;
    }
    if (!active_) return;
    const std::size_t i = *active_;
    const WindowRecord& w = windows_[i];
    if (machines_[i].phase() == Phase::kHorizontalChase) {
      // No crossing by theta_i + t_i1 can only come from round-off.
      if (t < w.theta + p.t_i1[i] + p.dt) return;
      close_active(t, pursuers, evader, events);
      continue;
    }
    if (w.theta_next && t >= *w.theta_next) {
      close_active(*w.theta_next, pursuers, evader, events);
      continue;
    }
    return;
  }
}

double Scheduler::next_deadline() const {
  const DerivedParams& p = *params_;
  if (finished_) return std::numeric_limits<double>::infinity();
  if (prealigning_) return p.T_pre;
  if (!active_) return std::numeric_limits<double>::infinity();
  const std::size_t i = *active_;
  if (machines_[i].phase() == Phase::kHorizontalChase) {
    return windows_[i].theta + p.t_i1[i] + p.dt;
  }
  return windows_[i].theta_next.value_or(std::numeric_limits<double>::infinity());
}

Scheduler::Plan Scheduler::controls(double h,
                                    std::span<const PlayerState> pursuers,
                                    Vec2 evader, Vec2 evader_control,
                                    const ConvexRegion& region) const {
  const DerivedParams& p = *params_;
  Plan plan;
  plan.controls.assign(machines_.size(), Vec2{0.0, 0.0});
  if (finished_) return plan;
  if (prealigning_) {
    for (std::size_t i = 0; i < machines_.size(); ++i) {
      plan.controls[i] = prealign_control(p.pursuer_start[i].y, p.T_pre);
    }
    return plan;
  }
  if (!active_) return plan;
  const std::size_t i = *active_;
  const PursuerPhaseMachine& mc = machines_[i];
  if (mc.phase() == Phase::kHorizontalChase) {
    plan.controls[i] = stage1_control(mc.chase_sign(), p.d, p.t_i1[i]);
  } else if (mc.phase() == Phase::kMirrorAndDrive) {
    Stage2Input in;
    in.pursuer = pursuers[i].position;
    in.evader = evader;
    in.evader_control = evader_control;
    in.h = h;
    in.vertical_sign = mc.vertical_sign();
    in.c = p.c;
    in.t_i2 = p.t_i2[i];
    in.ledger = &pursuers[i].ledger;
    in.region = &region;
    in.boundary_tol = p.boundary_tol;
    const Stage2Control s2 = stage2_control(in);
    plan.controls[i] = s2.control;
    plan.boundary_stop = s2.boundary_stop;
    plan.guard_tripped = s2.guard_tripped;
  }
  return plan;
}

void Scheduler::commit_step(double t, double s, Vec2 evader_control,
                            const Plan& plan, std::vector<TraceEvent>& events) {
  if (!active_) return;
  const std::size_t i = *active_;
  WindowRecord& w = windows_[i];
  if (w.tau_i1 && (w.outcome == WindowOutcome::kOpen ||
                   w.outcome == WindowOutcome::kFailed)) {
    w.window_v1_energy += evader_control.x * evader_control.x * s;
  }
  if (plan.guard_tripped && machines_[i].phase() == Phase::kMirrorAndDrive) {
    machines_[i].finish(false);
    w.outcome = WindowOutcome::kFailed;
    w.budget_guard_tripped = true;
    events.push_back({t, EventKind::kWindowFailed, i});
  }
  if (plan.boundary_stop) {
    events.push_back({t, EventKind::kBoundaryStop, i});
    if (evader_control.x != 0.0 && !w.alignment_lost) {
      w.alignment_lost = true;
      events.push_back({t, EventKind::kAlignmentLost, i});
    }
  }
}

void Scheduler::on_crossing(double t, double drive_gap,
                            std::vector<TraceEvent>& events) {
  const std::size_t i = *active_;
  machines_[i].enter_mirror(t, drive_gap);
  WindowRecord& w = windows_[i];
  w.tau_i1 = *machines_[i].tau_i1();
  w.theta_next = w.theta + *w.tau_i1 + params_->t_i2[i];
  events.push_back({t, EventKind::kCrossing, i});
}

void Scheduler::on_capture(double t, std::size_t pursuer) {
  finished_ = true;
  if (!active_ || *active_ != pursuer) return;
  PursuerPhaseMachine& mc = machines_[pursuer];
  if (mc.phase() != Phase::kHorizontalChase &&
      mc.phase() != Phase::kMirrorAndDrive) {
    return;
  }
  mc.finish(true);
  WindowRecord& w = windows_[pursuer];
  w.outcome = WindowOutcome::kCaptured;
  if (w.tau_i1) w.tau_i2 = t - (w.theta + *w.tau_i1);
}

}  // namespace pursuit
