#pragma once

#include <cstddef>
#include <vector>

#include "seamkit/edge.hpp"
#include "seamkit/edge_sequence.hpp"

namespace seamkit {

/// Optimum residual above which a corner projection is rejected, cm.
inline constexpr double kCornerResidualTolerance = 1e-3;
/// Optimum objective above which an edge projection is rejected, cm^2.
inline constexpr double kEdgeResidualTolerance = 1e-3;
/// Split points within this distance of an edge end are snapped onto it, cm.
inline constexpr double kSpliceSnap = 1e-4;

/// Where an edge of a spliced sequence came from.
struct PieceOrigin {
  enum class Source { before, shape, after };
  Source source;
  std::size_t index = 0;  // shape edge index, for Source::shape
  bool operator==(const PieceOrigin&) const = default;
};

struct SpliceResult {
  double t1 = 0.0;
  double t2 = 0.0;
  /// Corner: |e1(t1) - e2(t2) - R p| in cm. Edge: objective value in cm^2.
  double residual = 0.0;
  EdgeSequence edges;
  std::vector<PieceOrigin> origin;  // one per edge in `edges`
  /// Optimizer progress, best value per iteration.
  std::vector<double> trace;
};

/// Objective minimised by project_on_corner: |e1(t1) - e2(t2) - R p|^2.
double corner_objective(const Edge& e1, const Edge& e2, Point2 rotated_opening, double t1, double t2);

/// Cuts the corner e1.end == e2.start by the open `shape` rotated by
/// `rotation` radians. e1 is trimmed to [0,t1], e2 to [t2,1] and the shape
/// is spliced in reverse between them. Throws SolverError when the opening
/// does not fit.
SpliceResult project_on_corner(const Edge& e1, const Edge& e2, const EdgeSequence& shape,
                               double rotation);

/// Objective minimised by project_on_edge.
double edge_objective(const Edge& e, double opening_length, double t, double t1, double t2);

/// Inserts the open `shape` into `target` centred on parameter t. The cut
/// [t-t2, t+t1] is removed and the shape is rotated onto the insertion
/// vector, mirrored over it when `reflect` is set.
SpliceResult project_on_edge(const Edge& target, const EdgeSequence& shape, double t, bool reflect);

/// Quadratic Bézier whose point furthest from the chord is `apex`.
Edge quad_with_apex(Point2 start, Point2 end, Point2 apex);

struct SleeveProblem {
  /// Curve to invert (cubic), as drawn on the bodice side.
  Edge opening = Edge::line({0, 0}, {0, -1});
  double target_length = 1.0;
  Point2 start_tangent{0.0, -1.0};
  Point2 end_tangent{1.0, 0.0};
  double rest_angle_deg = 0.0;
  double curvature_weight = 0.1;
  /// Upper bound on the factor applied to the length and tangent terms when
  /// the unweighted minimum misses tolerance; 1 disables the escalation.
  double max_constraint_weight = 1e4;
};

struct SleeveResult {
  Edge curve = Edge::line({0, 0}, {0, -1});
  double energy = 0.0;
  double length_error = 0.0;          // |length - l|, cm
  double start_tangent_error = 0.0;   // degrees
  double end_tangent_error = 0.0;     // degrees
  bool converged = false;
  /// Weight on the length and tangent terms of the final solve (1 when the
  /// plain energy minimum already met tolerance).
  double constraint_weight = 1.0;
  /// Best energy per iteration of the unweighted solve.
  std::vector<double> trace;
};

/// Initial guess of the inversion: second control mirrored across the chord,
/// chord turned to point down and then rotated clockwise by the rest angle.
Edge sleeve_initial_guess(const Edge& opening, double rest_angle_deg);

/// (length - l)^2 + |T0 - T0*|^2 + |T1 - T1*|^2 + lambda * Cmax^2.
double sleeve_energy(const Edge& curve, const SleeveProblem& p);

/// Fits a cubic with the requested length and end tangents, starting from
/// sleeve_initial_guess. Unknowns: both relative controls and a stretch s of
/// the chord, end = end0 + s * (end0 - start).
SleeveResult invert_sleeve_curve(const SleeveProblem& p);

}  // namespace seamkit
