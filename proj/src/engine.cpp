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

#include "pursuit/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pursuit/errors.hpp"

namespace pursuit {
namespace {

void charge_or_throw(EnergyLedger& ledger, Vec2 control, double dt,
                     const char* who, std::size_t index) {
  if (ledger.charge(control, dt)) return;
  std::ostringstream msg;
  msg.precision(17);
  msg << who << ' ' << index << " overdraws its ledger: control (" << control.x
      << ", " << control.y << ") for " << dt << "s, consumed ("
      << ledger.consumed(0) << ", " << ledger.consumed(1) << "), budget ("
      << ledger.budget(0) << ", " << ledger.budget(1) << ")";
  throw AdmissibilityError(msg.str());
}

TraceStep snapshot(const GameState& st, std::span<const Vec2> controls,
                   Vec2 evader_control, std::optional<std::size_t> active,
                   Phase phase) {
  TraceStep s;
  s.t = st.t;
  s.pursuers.reserve(st.pursuers.size());
  s.pursuer_energy.reserve(st.pursuers.size());
  for (const PlayerState& p : st.pursuers) {
    s.pursuers.push_back(p.position);
    s.pursuer_energy.push_back(p.ledger.consumed());
  }
  s.pursuer_controls.assign(controls.begin(), controls.end());
  s.evader = st.evader.position;
  s.evader_control = evader_control;
  s.evader_energy = st.evader.ledger.consumed();
  s.active = active;
  s.phase = phase;
  return s;
}

}  // namespace

StepOutcome step(GameState& state, std::span<const Vec2> pursuer_controls,
                 Vec2 evader_control, double dt, const ConvexRegion& region,
                 double boundary_tol) {
  StepOutcome out;
  for (std::size_t i = 0; i < state.pursuers.size(); ++i) {
    PlayerState& p = state.pursuers[i];
    charge_or_throw(p.ledger, pursuer_controls[i], dt, "pursuer", i + 1);
    p.position += pursuer_controls[i] * dt;
    if (!region.contains(p.position, boundary_tol)) {
      p.position = region.project(p.position);
      out.projected_pursuers.push_back(i);
    }
  }
  charge_or_throw(state.evader.ledger, evader_control, dt, "evader", 0);
  state.evader.position += evader_control * dt;
  if (!region.contains(state.evader.position, boundary_tol)) {
    state.evader.position = region.project(state.evader.position);
    out.evader_projected = true;
  }
  state.t += dt;
  return out;
}

std::optional<double> detect_crossing(double gap_prev, double gap_next, double t,
                                      double dt) {
  if (gap_prev == 0.0) return t;
  if (sign(gap_next) == sign(gap_prev)) return std::nullopt;
  return t + dt * (gap_prev / (gap_prev - gap_next));
}

std::optional<CaptureHit> detect_capture(std::span<const Vec2> pursuers,
                                         std::span<const Vec2> pursuer_controls,
                                         Vec2 evader, Vec2 evader_control,
                                         double t, double h, double tol) {
  std::optional<CaptureHit> best;
  for (std::size_t i = 0; i < pursuers.size(); ++i) {
    const Vec2 r0 = evader - pursuers[i];
    const Vec2 w = evader_control - pursuer_controls[i];
    const double c = r0.squared_norm() - tol * tol;
    double s;
    if (c <= 0.0) {
      s = 0.0;
    } else {
      // |r0 + w s|^2 = tol^2, earliest root.
      const double a = w.squared_norm();
      const double b = r0.dot(w);
      if (a == 0.0 || b >= 0.0) continue;
      const double disc = b * b - a * c;
      if (disc < 0.0) continue;
      s = c / (-b + std::sqrt(disc));
      if (s > h) continue;
    }
    if (!best || t + s < best->t) best = CaptureHit{i, t + s};
  }
  return best;
}

RunResult run(const DerivedParams& params, EvaderPolicy& policy) {
  const DerivedParams& p = params;
  const std::size_t m = p.pursuer_count();
  RunResult result;
  result.params = params;
  SimulationTrace& trace = result.trace;
  CaptureReport& report = result.report;

  GameState st;
  for (std::size_t i = 0; i < m; ++i) {
    st.pursuers.push_back({p.pursuer_start[i], EnergyLedger(p.pursuer_budgets[i])});
  }
  st.evader = {p.evader_start, EnergyLedger(p.evader_budget)};

  Scheduler sched(p);
  const std::vector<Vec2> zero(m, Vec2{0.0, 0.0});
  trace.steps.push_back(snapshot(st, zero, {0.0, 0.0}, std::nullopt, Phase::kPreAlign));

  const double horizon = p.T_bound + p.dt;
  std::array<bool, 2> exhausted{false, false};
  std::vector<Vec2> positions(m);

  while (true) {
    sched.advance_to(st.t, st.pursuers, st.evader.position, trace.events);
    if (st.t >= horizon) break;

    const double deadline = sched.next_deadline();
    double h = p.dt;
    double cut_target = std::numeric_limits<double>::quiet_NaN();
    if (deadline - st.t <= h) {
      h = deadline - st.t;
      cut_target = deadline;
    }
    if (horizon - st.t <= h) {
      h = horizon - st.t;
      cut_target = horizon;
    }

    const std::optional<std::size_t> active = sched.active();
    const Phase phase = sched.prealigning() ? Phase::kPreAlign
                        : active            ? sched.machines()[*active].phase()
                                            : Phase::kIdle;

    EvaderObservation obs;
    obs.t = st.t;
    obs.h = h;
    obs.position = st.evader.position;
    obs.ledger = &st.evader.ledger;
    obs.pursuers = st.pursuers;
    obs.machines = sched.machines();
    obs.active = active;
    obs.params = &p;
    const Vec2 v = policy.control(obs);
    const Scheduler::Plan plan =
        sched.controls(h, st.pursuers, st.evader.position, v, p.region);

    for (std::size_t i = 0; i < m; ++i) positions[i] = st.pursuers[i].position;
    const auto capture = detect_capture(positions, plan.controls, st.evader.position,
                                        v, 0.0, h, p.capture_tol);
    std::optional<double> crossing;
    if (active && phase == Phase::kHorizontalChase) {
      const double g0 = st.evader.position.x - positions[*active].x;
      const double g1 = g0 + (v.x - plan.controls[*active].x) * h;
      crossing = detect_crossing(g0, g1, 0.0, h);
    }

    double s = h;
    bool crossed = false;
    if (crossing && *crossing <= s) {
      s = *crossing;
      crossed = true;
    }
    bool captured = false;
    if (capture && capture->t <= s) {
      s = capture->t;
      captured = true;
      crossed = false;
    }

    if (s > 0.0) {
      const double t_start = st.t;
      const StepOutcome out = step(st, plan.controls, v, s, p.region, p.boundary_tol);
      st.t = (s == h && !std::isnan(cut_target)) ? cut_target : t_start + s;
      sched.commit_step(st.t, s, v, plan, trace.events);
      for (std::size_t i : out.projected_pursuers) {
        trace.events.push_back({st.t, EventKind::kProjection, i});
      }
      if (out.evader_projected) {
        trace.events.push_back({st.t, EventKind::kProjection, std::nullopt});
      }
      for (int j = 0; j < 2; ++j) {
        if (!exhausted[j] &&
            st.evader.ledger.remaining(j) <= st.evader.ledger.allowance(j)) {
          exhausted[j] = true;
          trace.events.push_back({st.t, EventKind::kBudgetExhausted, std::nullopt});
        }
      }
      trace.steps.push_back(snapshot(st, plan.controls, v, active, phase));
    }

    if (captured) {
      report.captured = true;
      report.capture_time = st.t;
      report.capturing_pursuer = capture->pursuer;
      trace.events.push_back({st.t, EventKind::kCapture, capture->pursuer});
      sched.on_capture(st.t, capture->pursuer);
      break;
    }
    if (crossed) {
      PlayerState& x = st.pursuers[*active];
      x.position.x = st.evader.position.x;
      sched.on_crossing(st.t, st.evader.position.y - x.position.y, trace.events);
    }
  }

  trace.windows = sched.windows();
  report.T_bound = p.T_bound;
  report.dt = p.dt;
  report.hypothesis_holds = p.hypothesis_holds;
  report.guarantee_violated = p.hypothesis_holds && !report.captured;
  report.policy = std::string(policy_name(policy.spec()));
  report.windows = trace.windows;
  for (const PlayerState& ps : st.pursuers) report.pursuer_ledgers.push_back(ps.ledger);
  report.evader_ledger = st.evader.ledger;
  for (const TraceEvent& e : trace.events) {
    if (e.kind == EventKind::kBoundaryStop) ++report.boundary_stops;
    if (e.kind == EventKind::kProjection) ++report.projections;
  }
  return result;
}

RunResult run(const GameConfig& config, const PolicySpec& policy,
              ValidateOptions options) {
  const DerivedParams params = validate(config, options);
  EvaderPolicy evader(policy, params.rng_seed);
  return run(params, evader);
}

}  // namespace pursuit
