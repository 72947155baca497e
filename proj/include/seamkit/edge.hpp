#pragma once

#include <span>
#include <variant>
#include <vector>

#include "seamkit/geometry.hpp"
#include "seamkit/kernels.hpp"

namespace seamkit {

class EdgeSequence;

/// Chords shorter than this are rejected as zero-length edges.
inline constexpr double kMinChord = 1e-6;

/// Control point in an edge's chord frame: the start->end segment is the unit
/// x axis and its left perpendicular (same length) is the y axis.
struct RelControl {
  double u = 0.0;
  double v = 0.0;
  bool operator==(const RelControl&) const = default;
};

enum class EdgeKind { line, arc, quadratic, cubic };

struct LineShape {
  bool operator==(const LineShape&) const = default;
};
/// Signed sagitta over chord length. Positive bulges to the left of start->end.
struct ArcShape {
  double rel_sagitta = 0.0;
  bool operator==(const ArcShape&) const = default;
};
struct QuadShape {
  RelControl control;
  bool operator==(const QuadShape&) const = default;
};
struct CubicShape {
  RelControl c1;
  RelControl c2;
  bool operator==(const CubicShape&) const = default;
};

using EdgeShape = std::variant<LineShape, ArcShape, QuadShape, CubicShape>;

/// Selects one of the four circular arcs through two points with a radius.
struct ArcOptions {
  bool large_arc = false;
  bool right = false;  // bulge to the right of start->end
};

/// Oriented curve segment: straight line, circular arc, or quadratic/cubic
/// Bézier. All shape data is chord-relative, so rigid motions and uniform
/// scaling only touch the two endpoints.
///
/// Parameterization: Line and Arc use the arc-length fraction, Béziers the
/// native polynomial parameter. `param_at_fraction` converts between the two.
class Edge {
 public:
  static Edge line(Point2 start, Point2 end);
  static Edge arc(Point2 start, Point2 end, double rel_sagitta);
  static Edge quadratic(Point2 start, Point2 end, RelControl control);
  static Edge cubic(Point2 start, Point2 end, RelControl c1, RelControl c2);

  /// Builds an edge from absolute control points: none for a line, one point
  /// on the arc for an arc, one/two control points for Béziers.
  static Edge from_absolute_controls(EdgeKind kind, Point2 start, Point2 end,
                                     std::span<const Point2> controls);
  static Edge arc_from_three_points(Point2 start, Point2 on_arc, Point2 end);
  static Edge arc_from_radius(Point2 start, Point2 end, double radius, ArcOptions options = {});

  Point2 start() const { return start_; }
  Point2 end() const { return end_; }
  const EdgeShape& shape() const { return shape_; }
  EdgeKind kind() const { return static_cast<EdgeKind>(shape_.index()); }
  bool is_curved() const { return kind() != EdgeKind::line; }

  Point2 chord() const { return end_ - start_; }
  double chord_length() const { return norm(chord()); }
  Point2 to_absolute(RelControl c) const;
  RelControl to_relative(Point2 p) const;

  Point2 eval(double t) const;
  /// d/dt of eval in the edge's own parameterization.
  Point2 derivative(double t) const;
  Point2 tangent(double t) const;
  double curvature(double t) const;

  double length() const;
  /// Arc length between two parameters, t0 <= t1.
  double length_between(double t0, double t1) const;
  double max_curvature() const;

  double param_at_fraction(double fraction) const;
  double fraction_at_param(double t) const;

  /// Splits at strictly increasing native parameters in (0,1).
  std::vector<Edge> split_at_params(std::span<const double> params) const;
  /// Splits at strictly increasing arc-length fractions in (0,1).
  EdgeSequence subdivide(std::span<const double> fractions) const;

  std::vector<Point2> absolute_controls() const;
  /// Points whose distance to the chord is locally maximal; empty for lines.
  std::vector<Point2> extremal_points() const;
  std::vector<double> extremal_params() const;

  Edge reversed() const;
  Edge with_endpoints(Point2 start, Point2 end) const;
  Edge translated(Point2 offset) const;
  Edge rotated(double radians, Point2 pivot = {}) const;
  Edge scaled(double factor, Point2 pivot = {}) const;
  Edge reflected(Point2 on_axis, Point2 dir) const;

  // Arc accessors; only meaningful for arcs.
  double arc_radius() const;
  /// Signed swept angle, negative when traversed clockwise.
  double arc_sweep() const;
  Point2 arc_center() const;
  double absolute_sagitta() const;

  /// Power-basis form of a Bézier edge (quadratics are degree-elevated).
  kernels::PowerCubic power_cubic() const;

  bool operator==(const Edge&) const = default;

 private:
  Edge(Point2 start, Point2 end, EdgeShape shape);

  Point2 start_;
  Point2 end_;
  EdgeShape shape_;
};

}  // namespace seamkit
