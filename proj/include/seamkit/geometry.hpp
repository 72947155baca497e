#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace seamkit {

/// 2D point or vector in a panel's local frame, centimetres.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2() = default;
  constexpr Point2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
  constexpr Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
  constexpr Point2 operator-() const { return {-x, -y}; }
  constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Point2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Point2& operator+=(Point2 o) { x += o.x; y += o.y; return *this; }
  constexpr Point2& operator-=(Point2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr bool operator==(const Point2&) const = default;
};

constexpr Point2 operator*(double s, Point2 p) { return p * s; }

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
/// z-component of the 3D cross product.
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
/// Left perpendicular, same length.
constexpr Point2 perp(Point2 a) { return {-a.y, a.x}; }

inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 normalized(Point2 a) { return a / norm(a); }
inline bool is_finite(Point2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

/// Counterclockwise rotation by `radians` about `pivot`.
inline Point2 rotate(Point2 p, double radians, Point2 pivot = {}) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  const Point2 d = p - pivot;
  return pivot + Point2{c * d.x - s * d.y, s * d.x + c * d.y};
}

/// Mirror image of `p` over the line through `on_axis` with direction `dir`.
inline Point2 reflect(Point2 p, Point2 on_axis, Point2 dir) {
  const Point2 u = normalized(dir);
  const Point2 d = p - on_axis;
  return on_axis + u * (2.0 * dot(d, u)) - d;
}

inline Point2 lerp(Point2 a, Point2 b, double t) { return a + (b - a) * t; }

constexpr double deg2rad(double d) { return d * std::numbers::pi / 180.0; }
constexpr double rad2deg(double r) { return r * 180.0 / std::numbers::pi; }

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;

inline Vec3 lift(Point2 p) { return {p.x, p.y, 0.0}; }

}  // namespace seamkit
