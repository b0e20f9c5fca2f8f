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

#include "pursuit/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pursuit/errors.hpp"

namespace pursuit {
namespace {

// Pursuers this close to the spine (relative to d) count as already on it.
constexpr double kSpineSnap = 1e-12;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void check_config(const GameConfig& config) {
  const std::size_t m = config.pursuer_positions.size();
  if (m == 0) throw ConfigError("at least one pursuer is required");
  if (config.pursuer_budgets.size() != m) {
    throw ConfigError("pursuer positions and budgets differ in length");
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (!positive_finite(config.pursuer_budgets[i][j])) {
        std::ostringstream msg;
        msg << "pursuer " << i + 1 << " budget " << j + 1
            << " must be positive";
        throw ConfigError(msg.str());
      }
    }
  }
  for (int j = 0; j < 2; ++j) {
    if (!positive_finite(config.evader_budget[j])) {
      throw ConfigError("evader budget " + std::to_string(j + 1) +
                        " must be positive");
    }
  }
  if (!positive_finite(config.boundary_tol)) {
    throw ConfigError("boundary_tol must be positive");
  }
  if (config.dt && !positive_finite(*config.dt)) {
    throw ConfigError("dt must be positive");
  }
  if (config.capture_tol && !positive_finite(*config.capture_tol)) {
    throw ConfigError("capture_tol must be positive");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!config.region.contains(config.pursuer_positions[i],
                                config.boundary_tol)) {
      throw ConfigError("pursuer " + std::to_string(i + 1) +
                        " starts outside the region");
    }
  }
  if (!config.region.contains(config.evader_position, config.boundary_tol)) {
    throw ConfigError("evader starts outside the region");
  }
}

Vec2 support_point(const ConvexRegion& region, Vec2 dir) {
  if (region.is_polygon()) {
    const auto& v = region.as_polygon().vertices;
    return *std::max_element(v.begin(), v.end(), [&](Vec2 p, Vec2 q) {
      return p.dot(dir) < q.dot(dir);
    });
  }
  const auto& e = region.as_ellipse();
  const Vec2 d = rotate(dir, -e.rotation);
  const double h = std::hypot(e.a * d.x, e.b * d.y);
  return e.center + rotate({e.a * e.a * d.x / h, e.b * e.b * d.y / h},
                           e.rotation);
}

// x-range of the face of `region` that attains its extreme in direction dir.
std::pair<double, double> extreme_face_xrange(const ConvexRegion& region,
                                              Vec2 dir, double tol) {
  if (region.is_ellipse()) {
    const double x = support_point(region, dir).x;
    return {x, x};
  }
  const double h = region.support(dir);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Vec2& v : region.as_polygon().vertices) {
    if (v.dot(dir) >= h - tol) {
      lo = std::min(lo, v.x);
      hi = std::max(hi, v.x);
    }
  }
  return {lo, hi};
}

}  // namespace

double EnergyLedger::remaining(int j) const {
  return std::max(0.0, budget_[j] - consumed_[j]);
}

bool EnergyLedger::can_afford(Vec2 control, double dt) const {
  return consumed_[0] + control.x * control.x * dt <= budget_[0] + allowance(0) &&
         consumed_[1] + control.y * control.y * dt <= budget_[1] + allowance(1);
}

bool EnergyLedger::charge(Vec2 control, double dt) {
  if (!can_afford(control, dt)) return false;
  consumed_[0] += control.x * control.x * dt;
  consumed_[1] += control.y * control.y * dt;
  return true;
}

bool EnergyLedger::within_budget() const {
  return consumed_[0] <= budget_[0] + allowance(0) &&
         consumed_[1] <= budget_[1] + allowance(1);
}

Vec2 WorkingFrame::to_working(Vec2 world) const {
  Vec2 p = frame.to_frame(world);
  if (swapped) p = p.swapped();
  p.y -= drive_offset;
  return p;
}

Vec2 WorkingFrame::to_world(Vec2 working) const {
  Vec2 p = working;
  p.y += drive_offset;
  if (swapped) p = p.swapped();
  return frame.to_world(p);
}

std::optional<double> full_height_spine(const ConvexRegion& region) {
  const double tol = 1e-12 * region.scale();
  const auto [t0, t1] = extreme_face_xrange(region, {0.0, 1.0}, tol);
  const auto [b0, b1] = extreme_face_xrange(region, {0.0, -1.0}, tol);
  const double lo = std::max(t0, b0);
  const double hi = std::min(t1, b1);
  if (lo > hi + tol) return std::nullopt;
  return 0.5 * (lo + hi);
}

double prealign_duration(const std::vector<Vec2>& starts,
                         const std::vector<EnergyPair>& budgets) {
  double t = 0.0;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const double eta = starts[i].y;
    if (eta != 0.0) t = std::max(t, 4.0 * eta * eta / budgets[i][1]);
  }
  return t;
}

DerivedParams validate(const GameConfig& config, ValidateOptions options) {
  check_config(config);
  const std::size_t m = config.pursuer_count();

  DerivedParams p;
  const Frame frame = diametral_frame(config.region);
  const ConvexRegion in_frame = config.region.transformed(frame);
  p.region_d = diameter(config.region).length;
  p.region_c = max_ordinate(config.region, frame);

  for (int j = 0; j < 2; ++j) {
    double sum = 0.0;
    for (const auto& b : config.pursuer_budgets) sum += b[j];
    p.margin[j] = sum - config.evader_budget[j];
  }
  const std::optional<double> spine = full_height_spine(in_frame);
  const bool holds1 = p.margin[0] > 0.0;
  const bool holds2 = p.margin[1] > 0.0 && spine.has_value();

  if (holds1 && (!holds2 || p.margin[0] >= p.margin[1])) {
    p.axis = 1;
  } else if (holds2) {
    p.axis = 2;
  } else {
    std::string why =
        p.margin[1] > 0.0
            ? "pursuer energy exceeds the evader's only across the diameter, "
              "and the region has no full-height chord to line up on"
            : "pursuer energy does not exceed the evader's on either axis";
    if (!options.exploratory) throw HypothesisError(why);
    p.axis = 1;
    p.hypothesis_holds = false;
  }

  p.frame.frame = frame;
  if (p.axis == 2) {
    p.frame.swapped = true;
    p.frame.drive_offset = *spine;
    p.region = in_frame.swapped_axes().translated({0.0, -*spine});
  } else {
    p.region = in_frame;
  }

  const int chase = p.axis - 1;
  const int drive = 1 - chase;
  const double d = p.region_d;
  p.pursuer_start.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Vec2 w = p.frame.to_working(config.pursuer_positions[i]);
    if (std::abs(w.y) <= kSpineSnap * d) w.y = 0.0;
    p.pursuer_start.push_back(w);
    p.pursuer_budgets.push_back(
        {config.pursuer_budgets[i][chase], config.pursuer_budgets[i][drive]});
  }
  p.evader_start = p.frame.to_working(config.evader_position);
  p.evader_budget = {config.evader_budget[chase], config.evader_budget[drive]};

  double rho1_sq = 0.0;
  for (const auto& b : p.pursuer_budgets) rho1_sq += b[0];
  p.rho1 = std::sqrt(rho1_sq);
  const double sigma1_sq = p.evader_budget[0];

  p.d = d;
  p.c = p.axis == 1 ? p.region_c
                    : std::max({0.0, p.region.support({0.0, 1.0}),
                                p.region.support({0.0, -1.0})});

  p.T_pre = prealign_duration(p.pursuer_start, p.pursuer_budgets);
  p.prealign_used = p.T_pre > 0.0;

  double t = p.T_pre;
  for (std::size_t i = 0; i < m; ++i) {
    const double rho_i1_sq = p.pursuer_budgets[i][0];
    const double s_sq = sigma1_sq * rho_i1_sq / rho1_sq;
    p.sigma_i1_sq.push_back(s_sq);
    p.sigma_i1.push_back(std::sqrt(s_sq));
    const double rho_i2 = std::sqrt(p.pursuer_budgets[i][1]);
    p.rho_i2_effective.push_back(p.prealign_used ? std::sqrt(3.0) / 2.0 * rho_i2
                                                 : rho_i2);
    const double chase_energy =
        p.hypothesis_holds ? rho_i1_sq - s_sq : rho_i1_sq;
    p.t_i1.push_back(d * d / chase_energy);
    p.t_i2.push_back(p.c * p.c / p.rho_i2_effective_sq(i));
    p.theta_max.push_back(t);
    t += p.t_i1[i] + p.t_i2[i];
  }
  p.T_bound = t;

  if (config.dt) {
    p.dt = *config.dt;
  } else {
    double shortest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      shortest = std::min(shortest, p.t_i1[i]);
      if (p.t_i2[i] > 0.0) shortest = std::min(shortest, p.t_i2[i]);
    }
    p.dt = 1e-2 * shortest;
  }
  p.capture_tol = config.capture_tol.value_or(1e-6 * d);
  p.boundary_tol = config.boundary_tol;
  p.rng_seed = config.rng_seed;
  return p;
}

}  // namespace pursuit
