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

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "pursuit/engine.hpp"
#include "pursuit/errors.hpp"
#include "pursuit/harness.hpp"
#include "pursuit/scenario.hpp"

namespace pursuit {
namespace {

GameState one_player(Vec2 at, EnergyPair budget) {
  GameState s;
  s.evader = {at, EnergyLedger(budget)};
  return s;
}

TEST(Step, MovesByControlTimesDt) {
  const ConvexRegion r = ConvexRegion::ellipse({0, 0}, 3, 2);
  GameState s = one_player({0, 0}, {10, 10});
  step(s, {}, {1.0, 2.0}, 0.1, r, 1e-7);
  EXPECT_NEAR(s.evader.position.x, 0.1, 1e-16);
  EXPECT_NEAR(s.evader.position.y, 0.2, 1e-16);
  EXPECT_NEAR(s.evader.ledger.consumed(1), 0.4, 1e-16);
  EXPECT_DOUBLE_EQ(s.t, 0.1);
}

TEST(Step, ZeroControlChangesNothing) {
  const ConvexRegion r = ConvexRegion::ellipse({0, 0}, 3, 2);
  GameState s = one_player({0.5, 0.5}, {1, 1});
  step(s, {}, {0.0, 0.0}, 7.0, r, 1e-7);
  EXPECT_EQ(s.evader.position, (Vec2{0.5, 0.5}));
  EXPECT_EQ(s.evader.ledger.consumed(), (EnergyPair{0.0, 0.0}));
}

TEST(Step, ConstantControlIsExact) {
  const ConvexRegion r = ConvexRegion::ellipse({0, 0}, 100, 100);
  GameState s = one_player({0, 0}, {100, 100});
  for (int k = 0; k < 64; ++k) step(s, {}, {0.5, -0.75}, 0.125, r, 1e-7);
  EXPECT_EQ(s.evader.position, (Vec2{64 * 0.125 * 0.5, 64 * 0.125 * -0.75}));
}

TEST(Step, OverdraftIsAHardError) {
  const ConvexRegion r = ConvexRegion::ellipse({0, 0}, 3, 2);
  GameState s = one_player({0, 0}, {0.1, 0.1});
  EXPECT_THROW(step(s, {}, {1.0, 0.0}, 0.2, r, 1e-7), AdmissibilityError);
}

TEST(Step, ProjectsEscapedPlayers) {
  const ConvexRegion r = ConvexRegion::ellipse({0, 0}, 3, 2);
  GameState s = one_player({2.9, 0}, {10, 10});
  s.pursuers.push_back({{0, 0}, EnergyLedger({1, 1})});
  const std::vector<Vec2> u{{0.0, 0.0}};
  const StepOutcome out = step(s, u, {1.0, 0.0}, 0.5, r, 1e-7);
  EXPECT_TRUE(out.evader_projected);
  EXPECT_TRUE(out.projected_pursuers.empty());
  EXPECT_NEAR(s.evader.position.x, 3.0, 1e-12);
}

TEST(Crossing, LinearInterpolation) {
  EXPECT_DOUBLE_EQ(*detect_crossing(0.3, -0.1, 2.0, 0.4), 2.0 + 0.75 * 0.4);
  EXPECT_EQ(*detect_crossing(0.0, 5.0, 2.0, 0.4), 2.0);
  EXPECT_DOUBLE_EQ(*detect_crossing(-0.2, 0.0, 1.0, 0.1), 1.1);
  EXPECT_FALSE(detect_crossing(0.3, 0.1, 2.0, 0.4).has_value());
  EXPECT_FALSE(detect_crossing(-0.3, -0.5, 2.0, 0.4).has_value());
}

TEST(Capture, Coincident) {
  const std::vector<Vec2> x{{1.0, 1.0}};
  const std::vector<Vec2> u{{0.0, 0.0}};
  const auto hit = detect_capture(x, u, {1.0, 1.0}, {3.0, 0.0}, 5.0, 0.1, 1e-6);
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->pursuer, 0u);
  EXPECT_EQ(hit->t, 5.0);
}

TEST(Capture, InterpolatedEntry) {
  const std::vector<Vec2> x{{0.0, 0.0}};
  const std::vector<Vec2> u{{0.0, 0.0}};
  const auto hit = detect_capture(x, u, {1.0, 0.0}, {-1.0, 0.0}, 0.0, 1.0, 0.1);
  ASSERT_TRUE(hit);
  EXPECT_NEAR(hit->t, 0.9, 1e-15);
  // Both moving: relative speed 2.
  const std::vector<Vec2> u2{{1.0, 0.0}};
  EXPECT_NEAR(detect_capture(x, u2, {1.0, 0.0}, {-1.0, 0.0}, 0.0, 1.0, 0.1)->t, 0.45, 1e-15);
}

TEST(Capture, MissesAndTies) {
  const std::vector<Vec2> x{{0.0, 0.0}};
  const std::vector<Vec2> u{{0.0, 0.0}};
  // Passing by at distance 0.5.
  EXPECT_FALSE(detect_capture(x, u, {-1.0, 0.5}, {2.0, 0.0}, 0.0, 1.0, 0.1));
  // Moving away.
  EXPECT_FALSE(detect_capture(x, u, {1.0, 0.0}, {1.0, 0.0}, 0.0, 1.0, 0.1));
  // Too far for this step.
  EXPECT_FALSE(detect_capture(x, u, {5.0, 0.0}, {-1.0, 0.0}, 0.0, 1.0, 0.1));
  // Symmetric pursuers reach it together; the lower index wins.
  const std::vector<Vec2> two{{-1.0, 0.0}, {1.0, 0.0}};
  const std::vector<Vec2> still{{0.0, 0.0}, {0.0, 0.0}};
  const auto hit = detect_capture(two, still, {0.0, 0.0}, {0.0, 0.0}, 0.0, 1.0, 1.0);
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->pursuer, 0u);
}

TEST(Run, GoldenIdleClosedForm) {
  GameConfig c = golden_config();
  c.dt = 0.01;
  const RunResult r = run(c, IdlePolicy{});
  const DerivedParams& p = r.params;
  ASSERT_TRUE(r.report.captured);
  EXPECT_EQ(*r.report.capturing_pursuer, 0u);
  // Chase 5.5 at d / t_11, then close the vertical gap 1 at c / t_12.
  const double crossing = 5.5 / (p.d / p.t_i1[0]);
  const double expected = crossing + (1.0 - p.capture_tol) / (p.c / p.t_i2[0]);
  EXPECT_NEAR(*r.report.capture_time, expected, 1e-9 * expected);
  EXPECT_NEAR(*r.report.windows[0].tau_i1, crossing, 1e-9 * crossing);
  EXPECT_LE(*r.report.capture_time, p.t_i1[0] + p.t_i2[0]);
  EXPECT_EQ(r.report.windows[1].outcome, WindowOutcome::kNotReached);
  EXPECT_EQ(r.report.projections, 0u);
  EXPECT_EQ(r.report.boundary_stops, 0u);
}

TEST(Run, GoldenSplitterBeatsTheFirstWindowOnly) {
  const RunResult r = run(golden_config(), WindowSplitterPolicy{0.05});
  ASSERT_TRUE(r.report.captured);
  EXPECT_EQ(*r.report.capturing_pursuer, 1u);
  EXPECT_EQ(r.report.windows[0].outcome, WindowOutcome::kFailed);
  EXPECT_TRUE(r.report.windows[0].budget_guard_tripped);
  EXPECT_NEAR(r.report.windows[0].window_v1_energy, 1.05 * 2.0 / 2.21, 1e-9);
  EXPECT_EQ(r.report.windows[1].outcome, WindowOutcome::kCaptured);
  EXPECT_LE(r.report.windows[1].window_v1_energy, r.params.sigma_i1_sq[1]);
  EXPECT_LE(*r.report.capture_time, r.params.T_bound + r.params.dt);
}

TEST(Run, FarTargetCrossesAtStageOneTime) {
  GameConfig c;
  c.region = ConvexRegion::ellipse({0, 0}, 3, 2);
  c.pursuer_positions = {{-3.0, 0.0}};
  c.pursuer_budgets = {{1.0, 1.0}};
  c.evader_position = {3.0, 0.0};
  c.evader_budget = {0.5, 0.5};
  const RunResult r = run(c, IdlePolicy{});
  const DerivedParams& p = r.params;
  ASSERT_TRUE(r.report.captured);
  const double expected = p.t_i1[0] * (1.0 - p.capture_tol / p.d);
  EXPECT_NEAR(*r.report.capture_time, expected, 1e-9 * expected);
}

TEST(Run, ExploratoryEscapeIsNotAViolation) {
  GameConfig c = golden_config();
  c.pursuer_budgets = {{0.5, 0.5}};
  c.pursuer_positions = {{-3.0, 0.0}};
  c.evader_budget = {4.0, 4.0};
  EXPECT_THROW(run(c, GreedyFleePolicy{}), HypothesisError);
  const RunResult r = run(c, GreedyFleePolicy{}, {.exploratory = true});
  EXPECT_FALSE(r.report.hypothesis_holds);
  EXPECT_FALSE(r.report.guarantee_violated);
  if (!r.report.captured) {
    EXPECT_DOUBLE_EQ(r.trace.steps.back().t, r.params.T_bound + r.params.dt);
  }
}

TEST(Run, Deterministic) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    const GameConfig c = sample_config(rng);
    for (const PolicySpec& spec : all_policies()) {
      std::ostringstream a, b;
      write_trace_ndjson(a, run(c, spec));
      write_trace_ndjson(b, run(c, spec));
      ASSERT_EQ(a.str(), b.str());
    }
  }
}

// Trace-level properties of the strategy over random scenarios.
TEST(Run, StrategyInvariants) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    const GameConfig c = sample_config(rng);
    for (const PolicySpec& spec : all_policies()) {
      const RunResult r = run(c, spec);
      const DerivedParams& p = r.params;
      const auto& steps = r.trace.steps;
      double max_v1 = 0.0;
      for (const TraceStep& s : steps) max_v1 = std::max(max_v1, std::abs(s.evader_control.x));
      std::vector<bool> stopped(p.pursuer_count(), false);
      for (const TraceEvent& e : r.trace.events) {
        if (e.kind == EventKind::kBoundaryStop) stopped[*e.pursuer] = true;
      }
      for (std::size_t n = 1; n < steps.size(); ++n) {
        const TraceStep& s = steps[n];
        ASSERT_GT(s.t, steps[n - 1].t);
        if (s.phase == Phase::kPreAlign) continue;
        int moving = 0;
        for (std::size_t i = 0; i < s.pursuers.size(); ++i) {
          if (s.pursuer_controls[i] != Vec2{0.0, 0.0}) {
            ++moving;
            ASSERT_TRUE(s.active && *s.active == i);
          }
        }
        ASSERT_LE(moving, 1);
        if (s.phase == Phase::kMirrorAndDrive && !stopped[*s.active] &&
            !r.report.windows[*s.active].budget_guard_tripped) {
          const double gap = std::abs(s.pursuers[*s.active].x - s.evader.x);
          ASSERT_LE(gap, 2.0 * p.dt * max_v1 + 1e-9 * p.d);
        }
      }
      std::size_t failed = 0;
      for (std::size_t i = 0; i < r.report.windows.size(); ++i) {
        const WindowRecord& w = r.report.windows[i];
        if (w.tau_i1) {
          EXPECT_LE(*w.tau_i1, p.t_i1[i] + p.dt);
        }
        failed += w.outcome == WindowOutcome::kFailed;
        if (w.outcome == WindowOutcome::kCaptured) {
          EXPECT_LE(r.report.pursuer_ledgers[i].consumed(0),
                    p.pursuer_budgets[i][0] * (1 + kEnergyAllowance));
        }
      }
      EXPECT_LE(failed + 1, p.pursuer_count());
      if (std::holds_alternative<IdlePolicy>(spec)) {
        EXPECT_EQ(r.report.projections, 0u);
      }
    }
  }
}

}  // namespace
}  // namespace pursuit
