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

#include "pursuit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pursuit/errors.hpp"

namespace pursuit {
namespace {

constexpr int kEllipseMaxIterations = 100;
constexpr double kEllipseTolerance = 1e-10;
constexpr double kRepeatedPointTolerance = 1e-12;

bool finite(Vec2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Outward unit normal of the edge a -> b of a counterclockwise polygon.
Vec2 edge_normal(Vec2 a, Vec2 b) {
  const Vec2 e = b - a;
  return Vec2{e.y, -e.x} / e.norm();
}

Vec2 nearest_on_segment(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 e = b - a;
  const double len2 = e.squared_norm();
  double s = len2 > 0.0 ? (p - a).dot(e) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return a + e * s;
}

struct EdgeHit {
  Vec2 point;
  std::size_t edge = 0;
  double distance = std::numeric_limits<double>::infinity();
};

EdgeHit nearest_edge(const PolygonShape& poly, Vec2 p) {
  EdgeHit best;
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 q = nearest_on_segment(p, v[i], v[(i + 1) % v.size()]);
    const double dist = (p - q).norm();
    if (dist < best.distance) best = {q, i, dist};
  }
  return best;
}

// Largest signed distance of p outside any edge line; <= 0 means inside.
double max_edge_excess(const PolygonShape& poly, Vec2 p) {
  const auto& v = poly.vertices;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 n = edge_normal(v[i], v[(i + 1) % v.size()]);
    worst = std::max(worst, (p - v[i]).dot(n));
  }
  return worst;
}

Vec2 to_ellipse_local(const EllipseShape& e, Vec2 p) {
  return rotate(p - e.center, -e.rotation);
}

Vec2 from_ellipse_local(const EllipseShape& e, Vec2 q) {
  return rotate(q, e.rotation) + e.center;
}

double implicit_value(const EllipseShape& e, Vec2 q) {
  return (q.x / e.a) * (q.x / e.a) + (q.y / e.b) * (q.y / e.b);
}

// Nearest boundary point in the ellipse's local frame.
Vec2 ellipse_local_nearest(const EllipseShape& e, Vec2 q) {
  if (e.a >= e.b) return nearest_point_on_ellipse(e.a, e.b, q);
  return nearest_point_on_ellipse(e.b, e.a, q.swapped()).swapped();
}

// Newton iteration from the left on the convex, decreasing
//   F(t) = (e0 y0 / (t + e0^2))^2 + (e1 y1 / (t + e1^2))^2 - 1.
double solve_multiplier(double e0, double e1, double y0, double y1) {
  const double a0 = e0 * y0;
  const double a1 = e1 * y1;
  const double e0sq = e0 * e0;
  const double e1sq = e1 * e1;
  double t = std::max(-e1sq + a1, -e0sq + a0);
  const double step_tol = kEllipseTolerance * e0sq;
  int converged_at = -1;
  for (int it = 0; it < kEllipseMaxIterations; ++it) {
    const double r0 = a0 / (t + e0sq);
    const double r1 = a1 / (t + e1sq);
    const double f = r0 * r0 + r1 * r1 - 1.0;
    if (f <= 0.0) return t;
    const double df =
        -2.0 * (r0 * r0 / (t + e0sq) + r1 * r1 / (t + e1sq));
    const double step = -f / df;
    t += step;
    if (converged_at < 0 && std::abs(step) <= step_tol) converged_at = it;
    // Two polishing steps past the tolerance; convergence is quadratic here.
    if (converged_at >= 0 && it >= converged_at + 2) return t;
  }
  if (converged_at >= 0) return t;
  std::ostringstream msg;
  msg << "ellipse nearest-point solve did not converge: semi-axes (" << e0
      << ", " << e1 << "), query (" << y0 << ", " << y1 << "), last t " << t;
  throw NumericError(msg.str());
}

}  // namespace

Vec2 rotate(Vec2 p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

Vec2 Frame::to_frame(Vec2 world) const {
  return rotate(world - origin, rotation);
}
Vec2 Frame::to_world(Vec2 local) const {
  return rotate(local, -rotation) + origin;
}
Vec2 Frame::direction_to_frame(Vec2 world_dir) const {
  return rotate(world_dir, rotation);
}
Vec2 Frame::direction_to_world(Vec2 local_dir) const {
  return rotate(local_dir, -rotation);
}

Vec2 nearest_point_on_ellipse(double e0, double e1, Vec2 q) {
  const double sx = q.x < 0.0 ? -1.0 : 1.0;
  const double sy = q.y < 0.0 ? -1.0 : 1.0;
  const double y0 = std::abs(q.x);
  const double y1 = std::abs(q.y);
  double x0 = 0.0;
  double x1 = 0.0;
  if (y1 > 0.0) {
    if (y0 > 0.0) {
      const double t = solve_multiplier(e0, e1, y0, y1);
      x0 = e0 * e0 * y0 / (t + e0 * e0);
      x1 = e1 * e1 * y1 / (t + e1 * e1);
      // Pull the root back onto the curve.
      const double k = std::sqrt((x0 / e0) * (x0 / e0) + (x1 / e1) * (x1 / e1));
      if (k > 0.0) {
        x0 /= k;
        x1 /= k;
      }
    } else {
      x0 = 0.0;
      x1 = e1;
    }
  } else {
    const double denom = e0 * e0 - e1 * e1;
    if (denom > 0.0 && y0 < denom / e0) {
      x0 = e0 * e0 * y0 / denom;
      const double r = x0 / e0;
      x1 = e1 * std::sqrt(std::max(0.0, 1.0 - r * r));
    } else {
      x0 = e0;
      x1 = 0.0;
    }
  }
  return {sx * x0, sy * x1};
}

ConvexRegion ConvexRegion::polygon(std::vector<Vec2> v) {
  if (v.size() < 3) throw ConfigError("polygon needs at least 3 vertices");
  for (const Vec2& p : v) {
    if (!finite(p)) throw ConfigError("polygon vertex is not finite");
  }
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if ((v[i] - v[j]).norm() <= kRepeatedPointTolerance) {
        throw ConfigError("polygon has repeated vertices");
      }
    }
  }
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = v[(i + 1) % n] - v[i];
    const Vec2 e1 = v[(i + 2) % n] - v[(i + 1) % n];
    const double cr = e0.cross(e1);
    if (!(cr > 0.0)) {
      throw ConfigError(
          "polygon is not strictly convex and counterclockwise at vertex " +
          std::to_string((i + 1) % n));
    }
    turning += std::atan2(cr, e0.dot(e1));
  }
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
    throw ConfigError("polygon winds more than once");
  }
  return ConvexRegion(PolygonShape{std::move(v)});
}

ConvexRegion ConvexRegion::ellipse(Vec2 center, double a, double b,
                                   double rotation) {
  if (!finite(center) || !std::isfinite(rotation)) {
    throw ConfigError("ellipse parameters are not finite");
  }
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ConfigError("ellipse semi-axes must be positive");
  }
  return ConvexRegion(EllipseShape{center, a, b, rotation});
}

bool ConvexRegion::contains(Vec2 p, double tol) const {
  if (const auto* poly = std::get_if<PolygonShape>(&shape_)) {
    return max_edge_excess(*poly, p) <= tol;
  }
  const auto& e = as_ellipse();
  const Vec2 q = to_ellipse_local(e, p);
  if (implicit_value(e, q) <= 1.0) return true;
  if (!(tol > 0.0)) return false;
  const double ga = q.x / (e.a + tol);
  const double gb = q.y / (e.b + tol);
  if (ga * ga + gb * gb <= 1.0) return true;
  return (q - ellipse_local_nearest(e, q)).norm() <= tol;
}

Vec2 ConvexRegion::project(Vec2 p) const {
  if (contains(p, 0.0)) return p;
  return nearest_boundary_point(p);
}

bool ConvexRegion::on_boundary(Vec2 p, double tol) const {
  if (!contains(p, tol)) return false;
  if (const auto* e = std::get_if<EllipseShape>(&shape_)) {
    // Quick reject: k*E keeps a margin of (1-k)*min(a,b) from the boundary.
    const double r = std::min(e->a, e->b);
    if (tol < r) {
      const double k = 1.0 - tol / r;
      if (implicit_value(*e, to_ellipse_local(*e, p)) < k * k) return false;
    }
  }
  return signed_boundary_distance(p) <= tol;
}

double ConvexRegion::signed_boundary_distance(Vec2 p) const {
  if (const auto* poly = std::get_if<PolygonShape>(&shape_)) {
    const double excess = max_edge_excess(*poly, p);
    if (excess <= 0.0) return -excess;
    return -nearest_edge(*poly, p).distance;
  }
  const auto& e = as_ellipse();
  const Vec2 q = to_ellipse_local(e, p);
  const double dist = (q - ellipse_local_nearest(e, q)).norm();
  return implicit_value(e, q) <= 1.0 ? dist : -dist;
}

Vec2 ConvexRegion::nearest_boundary_point(Vec2 p) const {
  if (const auto* poly = std::get_if<PolygonShape>(&shape_)) {
    return nearest_edge(*poly, p).point;
  }
  const auto& e = as_ellipse();
  return from_ellipse_local(e, ellipse_local_nearest(e, to_ellipse_local(e, p)));
}

Vec2 ConvexRegion::outward_normal_near(Vec2 p) const {
  if (const auto* poly = std::get_if<PolygonShape>(&shape_)) {
    const auto hit = nearest_edge(*poly, p);
    const auto& v = poly->vertices;
    return edge_normal(v[hit.edge], v[(hit.edge + 1) % v.size()]);
  }
  const auto& e = as_ellipse();
  const Vec2 nb = ellipse_local_nearest(e, to_ellipse_local(e, p));
  const Vec2 grad{nb.x / (e.a * e.a), nb.y / (e.b * e.b)};
  return rotate(grad / grad.norm(), e.rotation);
}

double ConvexRegion::support(Vec2 dir) const {
  if (const auto* poly = std::get_if<PolygonShape>(&shape_)) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec2& v : poly->vertices) best = std::max(best, v.dot(dir));
    return best;
  }
  const auto& e = as_ellipse();
  const Vec2 d = rotate(dir, -e.rotation);
  return e.center.dot(dir) + std::hypot(e.a * d.x, e.b * d.y);
}

ConvexRegion ConvexRegion::transformed(const Frame& frame) const {
  if (const auto* poly = std::get_if<PolygonShape>(&shape_)) {
    PolygonShape out;
    out.vertices.reserve(poly->vertices.size());
    for (const Vec2& v : poly->vertices) out.vertices.push_back(frame.to_frame(v));
    return ConvexRegion(std::move(out));
  }
  EllipseShape e = as_ellipse();
  e.center = frame.to_frame(e.center);
  e.rotation += frame.rotation;
  return ConvexRegion(e);
}

ConvexRegion ConvexRegion::swapped_axes() const {
  if (const auto* poly = std::get_if<PolygonShape>(&shape_)) {
    PolygonShape out;
    out.vertices.assign(poly->vertices.rbegin(), poly->vertices.rend());
    for (Vec2& v : out.vertices) v = v.swapped();
    return ConvexRegion(std::move(out));
  }
  EllipseShape e = as_ellipse();
  e.center = e.center.swapped();
  e.rotation = std::numbers::pi / 2.0 - e.rotation;
  return ConvexRegion(e);
}

ConvexRegion ConvexRegion::translated(Vec2 offset) const {
  if (const auto* poly = std::get_if<PolygonShape>(&shape_)) {
    PolygonShape out = *poly;
    for (Vec2& v : out.vertices) v += offset;
    return ConvexRegion(std::move(out));
  }
  EllipseShape e = as_ellipse();
  e.center += offset;
  return ConvexRegion(e);
}

double ConvexRegion::scale() const {
  if (const auto* poly = std::get_if<PolygonShape>(&shape_)) {
    double r = 0.0;
    for (const Vec2& v : poly->vertices) {
      r = std::max(r, (v - poly->vertices.front()).norm());
    }
    return r;
  }
  const auto& e = as_ellipse();
  return std::max(e.a, e.b);
}

namespace {

struct PairCandidate {
  double d2 = -1.0;
  Vec2 first;
  Vec2 second;
};

void offer(PairCandidate& best, Vec2 p, Vec2 q) {
  if (lex_less(q, p)) std::swap(p, q);
  const double d2 = (q - p).squared_norm();
  if (d2 > best.d2 ||
      (d2 == best.d2 &&
       (lex_less(p, best.first) || (p == best.first && lex_less(q, best.second))))) {
    best = {d2, p, q};
  }
}

}  // namespace

Diameter brute_force_diameter(const PolygonShape& polygon) {
  PairCandidate best;
  const auto& v = polygon.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) offer(best, v[i], v[j]);
  }
  return {std::sqrt(best.d2), best.first, best.second};
}

Diameter diameter(const ConvexRegion& region) {
  if (region.is_ellipse()) {
    const auto& e = region.as_ellipse();
    Vec2 axis;
    double r = 0.0;
    if (e.a == e.b) {
      axis = {1.0, 0.0};
      r = e.a;
    } else if (e.a > e.b) {
      axis = rotate({1.0, 0.0}, e.rotation);
      r = e.a;
    } else {
      axis = rotate({0.0, 1.0}, e.rotation);
      r = e.b;
    }
    Vec2 p = e.center - axis * r;
    Vec2 q = e.center + axis * r;
    if (lex_less(q, p)) std::swap(p, q);
    return {2.0 * r, p, q};
  }

  // Rotating calipers: for each edge (i, i+1) advance the antipodal vertex j
  // while the triangle area keeps growing.
  const auto& v = region.as_polygon().vertices;
  const std::size_t n = v.size();
  PairCandidate best;
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t i1 = (i + 1) % n;
    const Vec2 edge = v[i1] - v[i];
    for (std::size_t guard = 0; guard < n; ++guard) {
      const std::size_t j1 = (j + 1) % n;
      if (edge.cross(v[j1] - v[j]) > 0.0) {
        j = j1;
      } else {
        break;
      }
    }
    offer(best, v[i], v[j]);
    offer(best, v[i1], v[j]);
    // Parallel edges make (i, j+1) antipodal as well.
    offer(best, v[i], v[(j + 1) % n]);
  }
  return {std::sqrt(best.d2), best.first, best.second};
}

Frame diametral_frame(const ConvexRegion& region) {
  const Diameter dia = diameter(region);
  if (!(dia.length > 0.0)) {
    throw ConfigError("region has zero diameter");
  }
  const Vec2 dir = dia.second - dia.first;
  return Frame{(dia.first + dia.second) * 0.5, -std::atan2(dir.y, dir.x)};
}

double max_ordinate(const ConvexRegion& region, const Frame& frame) {
  if (region.is_polygon()) {
    double c = 0.0;
    for (const Vec2& v : region.as_polygon().vertices) {
      c = std::max(c, std::abs(frame.to_frame(v).y));
    }
    return c;
  }
  const ConvexRegion local = region.transformed(frame);
  return std::max({0.0, local.support({0.0, 1.0}), local.support({0.0, -1.0})});
}

}  // namespace pursuit
