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

#include "pursuit/evader.hpp"

#include <algorithm>
#include <cmath>

namespace pursuit {
namespace {

// The splitter bursts its allotment over about this many steps.
constexpr double kSplitterBurstSteps = 2.0;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool chasing(Phase phase) {
  return phase == Phase::kHorizontalChase || phase == Phase::kMirrorAndDrive;
}

// Pursuer to run from: the active one while it is chasing, else the nearest.
Vec2 threat(const EvaderObservation& obs) {
  if (obs.active && chasing(obs.machines[*obs.active].phase())) {
    return obs.pursuers[*obs.active].position;
  }
  Vec2 best = obs.pursuers.front().position;
  for (const PlayerState& p : obs.pursuers) {
    if ((p.position - obs.position).squared_norm() <
        (best - obs.position).squared_norm()) {
      best = p.position;
    }
  }
  return best;
}

Vec2 unit_or(Vec2 v, Vec2 fallback) {
  const double n = v.norm();
  return n > 0.0 ? v / n : fallback;
}

// Per-coordinate speeds that spend what is left evenly over the rest of the
// horizon.
Vec2 spend_down_speed(const EvaderObservation& obs, double factor) {
  const double remaining_time = std::max(obs.params->T_bound - obs.t, obs.h);
  return {factor * std::sqrt(obs.ledger->remaining(0) / remaining_time),
          factor * std::sqrt(obs.ledger->remaining(1) / remaining_time)};
}

double chase_midpoint(const ConvexRegion& region) {
  return 0.5 * (region.support({1.0, 0.0}) - region.support({-1.0, 0.0}));
}

}  // namespace

std::string_view policy_name(const PolicySpec& spec) {
  return std::visit(Overloaded{
                        [](const IdlePolicy&) { return "idle"; },
                        [](const RandomAdmissiblePolicy&) { return "random_admissible"; },
                        [](const GreedyFleePolicy&) { return "greedy_flee"; },
                        [](const WindowSplitterPolicy&) { return "window_splitter"; },
                        [](const BoundaryHuggerPolicy&) { return "boundary_hugger"; },
                    },
                    spec);
}

std::vector<PolicySpec> all_policies() {
  return {IdlePolicy{}, RandomAdmissiblePolicy{}, GreedyFleePolicy{},
          WindowSplitterPolicy{}, BoundaryHuggerPolicy{}};
}

Vec2 clamp_admissible(Vec2 desired, Vec2 position, const EnergyLedger& ledger,
                      const ConvexRegion& region, double h) {
  const double cap0 = std::sqrt(ledger.remaining(0) / h);
  const double cap1 = std::sqrt(ledger.remaining(1) / h);
  Vec2 v{std::clamp(desired.x, -cap0, cap0), std::clamp(desired.y, -cap1, cap1)};
  const Vec2 target = position + v * h;
  if (region.contains(target, 0.0)) return v;
  v = (region.project(target) - position) / h;
  double shrink = 1.0;
  if (std::abs(v.x) > cap0) shrink = std::min(shrink, cap0 / std::abs(v.x));
  if (std::abs(v.y) > cap1) shrink = std::min(shrink, cap1 / std::abs(v.y));
  return v * shrink;
}

std::vector<double> splitter_allotments(const DerivedParams& params,
                                        double overdraw_fraction) {
  std::vector<double> out;
  double left = params.evader_budget[0];
  for (double s_sq : params.sigma_i1_sq) {
    const double spend = std::min((1.0 + overdraw_fraction) * s_sq, left);
    out.push_back(spend);
    left -= spend;
  }
  return out;
}

std::vector<bool> planned_overdrawn_windows(const DerivedParams& params,
                                            double overdraw_fraction) {
  const auto allot = splitter_allotments(params, overdraw_fraction);
  std::vector<bool> out;
  for (std::size_t i = 0; i < allot.size(); ++i) {
    out.push_back(allot[i] > params.sigma_i1_sq[i] * (1.0 + kEnergyAllowance));
  }
  return out;
}

EvaderPolicy::EvaderPolicy(PolicySpec spec, std::uint64_t seed)
    : spec_(spec), rng_([&] {
        std::seed_seq seq{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(spec.index()), 0x5eedu};
        return std::mt19937_64(seq);
      }()) {}

Vec2 EvaderPolicy::control(const EvaderObservation& obs) {
  return clamp_admissible(desired(obs), obs.position, *obs.ledger,
                          obs.params->region, obs.h);
}

Vec2 EvaderPolicy::desired(const EvaderObservation& obs) {
  return std::visit(
      Overloaded{
          [](const IdlePolicy&) { return Vec2{0.0, 0.0}; },
          [&](const RandomAdmissiblePolicy& p) {
            std::uniform_real_distribution<double> unit(-1.0, 1.0);
            const double T = obs.params->T_bound;
            const double a = unit(rng_);
            const double b = unit(rng_);
            return Vec2{a * p.speed_factor * std::sqrt(obs.ledger->budget(0) / T),
                        b * p.speed_factor * std::sqrt(obs.ledger->budget(1) / T)};
          },
          [&](const GreedyFleePolicy&) {
            const Vec2 dir = unit_or(obs.position - threat(obs), {1.0, 0.0});
            const Vec2 speed = spend_down_speed(obs, 1.0);
            return Vec2{dir.x * speed.x, dir.y * speed.y};
          },
          [&](const WindowSplitterPolicy& p) {
            return splitter_desired(obs, p.overdraw_fraction);
          },
          [&](const BoundaryHuggerPolicy&) {
            const ConvexRegion& region = obs.params->region;
            const Vec2 n = region.outward_normal_near(obs.position);
            Vec2 tangent{-n.y, n.x};
            if (tangent.dot(obs.position - threat(obs)) < 0.0) tangent = -tangent;
            const Vec2 dir = unit_or(tangent + n, tangent);
            const Vec2 speed = spend_down_speed(obs, 2.0);
            return Vec2{dir.x * speed.x, dir.y * speed.y};
          },
      },
      spec_);
}

Vec2 EvaderPolicy::splitter_desired(const EvaderObservation& obs,
                                    double fraction) {
  if (allotments_.empty()) allotments_ = splitter_allotments(*obs.params, fraction);
  if (!obs.active) return {0.0, 0.0};
  const std::size_t i = *obs.active;
  const PursuerPhaseMachine& mc = obs.machines[i];
  const bool mirror_window =
      mc.tau_i1() && (mc.phase() == Phase::kMirrorAndDrive ||
                      mc.phase() == Phase::kFailed);
  if (!mirror_window) return {0.0, 0.0};
  if (window_ != i) {
    window_ = i;
    window_baseline_ = obs.ledger->consumed(0);
    anchor_ = obs.position.x;
  }
  const double spent = obs.ledger->consumed(0) - window_baseline_;
  const double want = allotments_[i] - spent;
  if (!(want > 1e-12 * allotments_[i])) return {0.0, 0.0};
  const double quota = std::min(want, allotments_[i] / kSplitterBurstSteps);
  const double speed = std::sqrt(quota / obs.h);
  // Jitter around the anchor so the spend costs no net displacement.
  double dir;
  if (obs.position.x != anchor_) {
    dir = obs.position.x > anchor_ ? -1.0 : 1.0;
  } else {
    dir = obs.position.x > chase_midpoint(obs.params->region) ? -1.0 : 1.0;
  }
  return {dir * speed, 0.0};
}

}  // namespace pursuit
