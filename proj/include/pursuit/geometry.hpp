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

#include <cmath>
#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

namespace pursuit {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;

  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  constexpr double cross(Vec2 o) const { return x * o.y - y * o.x; }
  constexpr double squared_norm() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }
  constexpr Vec2 swapped() const { return {y, x}; }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

// Lexicographic order (x, then y); used for deterministic tie-breaks.
constexpr bool lex_less(Vec2 a, Vec2 b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

Vec2 rotate(Vec2 p, double angle);

// Rigid transform into a local frame: local = R(rotation) * (world - origin).
struct Frame {
  Vec2 origin;
  double rotation = 0.0;

  Vec2 to_frame(Vec2 world) const;
  Vec2 to_world(Vec2 local) const;
  // Directions only (no translation).
  Vec2 direction_to_frame(Vec2 world_dir) const;
  Vec2 direction_to_world(Vec2 local_dir) const;
};

struct PolygonShape {
  std::vector<Vec2> vertices;  // counterclockwise, strictly convex

  bool operator==(const PolygonShape&) const = default;
};

struct EllipseShape {
  Vec2 center;
  double a = 1.0;  // semi-axis along the rotated x direction
  double b = 1.0;  // semi-axis along the rotated y direction
  double rotation = 0.0;

  bool operator==(const EllipseShape&) const = default;
};

// Closed, bounded convex playing set. Either a strictly convex polygon or a
// (possibly rotated) ellipse. Immutable after construction.
class ConvexRegion {
 public:
  using Shape = std::variant<PolygonShape, EllipseShape>;

  // Both factories validate and throw ConfigError on degenerate input.
  static ConvexRegion polygon(std::vector<Vec2> ccw_vertices);
  static ConvexRegion ellipse(Vec2 center, double a, double b,
                              double rotation = 0.0);

  const Shape& shape() const { return shape_; }
  bool is_polygon() const {
    return std::holds_alternative<PolygonShape>(shape_);
  }
  bool is_ellipse() const {
    return std::holds_alternative<EllipseShape>(shape_);
  }
  const PolygonShape& as_polygon() const {
    return std::get<PolygonShape>(shape_);
  }
  const EllipseShape& as_ellipse() const {
    return std::get<EllipseShape>(shape_);
  }

  // Closed-set membership, accepting points at most `tol` outside N.
  bool contains(Vec2 p, double tol) const;

  // Nearest point of N; identity for points already in N.
  Vec2 project(Vec2 p) const;

  // contains(p, tol) and distance to the complement of N is at most tol.
  bool on_boundary(Vec2 p, double tol) const;

  // Signed distance to the boundary curve: positive inside (distance to the
  // complement), negative outside (minus the distance to N).
  double signed_boundary_distance(Vec2 p) const;

  // Nearest point on the boundary curve, for interior and exterior points.
  Vec2 nearest_boundary_point(Vec2 p) const;

  // Unit outward normal of the boundary at the point nearest to p.
  Vec2 outward_normal_near(Vec2 p) const;

  // max over N of dir . p
  double support(Vec2 dir) const;

  // The same set, expressed in `frame` coordinates.
  ConvexRegion transformed(const Frame& frame) const;
  // Mirror image across the line y = x (orientation kept counterclockwise).
  ConvexRegion swapped_axes() const;
  ConvexRegion translated(Vec2 offset) const;

  // Characteristic length (bounding radius) used to scale tolerances.
  double scale() const;

  bool operator==(const ConvexRegion&) const = default;

 private:
  explicit ConvexRegion(Shape shape) : shape_(std::move(shape)) {}
  Shape shape_;
};

struct Diameter {
  double length = 0.0;
  Vec2 first;   // lexicographically smaller endpoint
  Vec2 second;
};

// Diameter and a witnessing pair. Polygons use rotating calipers; among pairs
// of equal (bit-identical) squared length the one whose first point is
// lexicographically smallest wins. Ellipses use the major axis; a circle uses
// its horizontal diameter.
Diameter diameter(const ConvexRegion& region);

// O(n^2) scan over vertex pairs. Polygons only.
Diameter brute_force_diameter(const PolygonShape& polygon);

// Frame whose x-axis runs through the diametral pair, origin at its midpoint.
// Throws ConfigError when the diameter is zero.
Frame diametral_frame(const ConvexRegion& region);

// max |eta| over N expressed in `frame`.
double max_ordinate(const ConvexRegion& region, const Frame& frame);

// Nearest point on the axis-aligned ellipse (x/e0)^2 + (y/e1)^2 = 1 to q.
// Newton iteration on the Lagrange multiplier, at most 100 iterations, step
// tolerance 1e-10 relative. Works for interior and exterior q.
Vec2 nearest_point_on_ellipse(double e0, double e1, Vec2 q);

}  // namespace pursuit
