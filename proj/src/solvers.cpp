#include "seamkit/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "seamkit/error.hpp"
#include "seamkit/optimize.hpp"

namespace seamkit {

namespace {

// e[0,t]; `at` receives the split point. Empty when the piece would vanish.
std::optional<Edge> head(const Edge& e, double t, Point2& at) {
  const Point2 p = e.eval(t);
  if (distance(p, e.start()) < kSpliceSnap) {
    at = e.start();
    return std::nullopt;
  }
  if (distance(p, e.end()) < kSpliceSnap) {
    at = e.end();
    return e;
  }
  const double params[] = {t};
  Edge piece = e.split_at_params(params)[0];
  at = piece.end();
  return piece;
}

// e[t,1].
std::optional<Edge> tail(const Edge& e, double t, Point2& at) {
  const Point2 p = e.eval(t);
  if (distance(p, e.end()) < kSpliceSnap) {
    at = e.end();
    return std::nullopt;
  }
  if (distance(p, e.start()) < kSpliceSnap) {
    at = e.start();
    return e;
  }
  const double params[] = {t};
  Edge piece = e.split_at_params(params)[1];
  at = piece.start();
  return piece;
}

// Forces the sequence to run exactly from `from` to `to`.
EdgeSequence pinned(EdgeSequence seq, Point2 from, Point2 to) {
  seq.snap_chain();
  std::vector<Edge> edges = seq.edges();
  edges.front() = edges.front().with_endpoints(from, edges.front().end());
  edges.back() = edges.back().with_endpoints(edges.back().start(), to);
  return EdgeSequence(std::move(edges));
}

void check_shape(const EdgeSequence& shape) {
  if (shape.empty() || !shape.is_chained() || shape.is_loop()) {
    throw GeometryError("projection shape must be an open chained edge sequence");
  }
  if (norm(shape.opening()) < kMinChord) throw GeometryError("projection shape has a zero opening");
}

double angle_of(Point2 v) { return std::atan2(v.y, v.x); }

// Seed grid of the two projections, points per parameter. Curved corners can
// have narrow valleys that a coarser grid misses.
constexpr int kSeedGrid = 9;

}  // namespace

double corner_objective(const Edge& e1, const Edge& e2, Point2 rotated_opening, double t1, double t2) {
  const Point2 r = e1.eval(t1) - e2.eval(t2) - rotated_opening;
  return dot(r, r);
}

SpliceResult project_on_corner(const Edge& e1, const Edge& e2, const EdgeSequence& shape,
                               double rotation) {
  check_shape(shape);
  if (distance(e1.end(), e2.start()) > kChainTolerance) {
    throw GeometryError("corner edges are not chained");
  }
  const Point2 p = rotate(shape.opening(), rotation);
  const optimize::Box box{{0.0, 0.0}, {1.0, 1.0}};
  const auto f = [&](const std::vector<double>& x) { return corner_objective(e1, e2, p, x[0], x[1]); };
  const optimize::Result opt = optimize::grid_seeded(f, box, kSeedGrid, 3);

  SpliceResult out;
  out.t1 = opt.x[0];
  out.t2 = opt.x[1];
  out.residual = std::sqrt(opt.f);
  out.trace = opt.trace;
  if (out.residual > kCornerResidualTolerance) {
    SolverError err("projection shape does not fit the corner");
    err.with_residual("corner_residual", out.residual).with_residual("t1", out.t1).with_residual("t2", out.t2);
    throw err;
  }

  Point2 a;
  Point2 b;
  const std::optional<Edge> first = head(e1, out.t1, a);
  const std::optional<Edge> last = tail(e2, out.t2, b);
  if (distance(a, b) < kMinChord) throw SolverError("corner projection collapsed to a point");
  const EdgeSequence placed = shape.translated(-shape.front().start()).rotated(rotation).translated(b);
  const EdgeSequence inner = pinned(placed.reversed(), a, b);

  std::vector<Edge> edges;
  if (first) {
    edges.push_back(*first);
    out.origin.push_back({PieceOrigin::Source::before, 0});
  }
  for (std::size_t i = 0; i < inner.size(); ++i) {
    edges.push_back(inner[i]);
    out.origin.push_back({PieceOrigin::Source::shape, inner.size() - 1 - i});
  }
  if (last) {
    edges.push_back(*last);
    out.origin.push_back({PieceOrigin::Source::after, 0});
  }
  out.edges = EdgeSequence(std::move(edges));
  return out;
}

double edge_objective(const Edge& e, double opening_length, double t, double t1, double t2) {
  const Point2 c = e.eval(t);
  const Point2 right = e.eval(t + t1);
  const Point2 left = e.eval(t - t2);
  const double width = distance(right, left) - opening_length;
  const double balance = distance(right, c) - distance(left, c);
  return width * width + balance * balance;
}

SpliceResult project_on_edge(const Edge& target, const EdgeSequence& shape, double t, bool reflect) {
  check_shape(shape);
  if (!(t > 0.0 && t < 1.0)) throw GeometryError("projection position must lie inside (0,1)");
  const double width = norm(shape.opening());
  const optimize::Box box{{0.0, 0.0}, {1.0 - t, t}};
  const auto f = [&](const std::vector<double>& x) {
    return edge_objective(target, width, t, std::min(x[0], 1.0 - t), std::min(x[1], t));
  };
  const optimize::Result opt = optimize::grid_seeded(f, box, kSeedGrid, 3);

  SpliceResult out;
  out.t1 = opt.x[0];
  out.t2 = opt.x[1];
  out.residual = opt.f;
  out.trace = opt.trace;
  if (out.residual > kEdgeResidualTolerance) {
    SolverError err("projection shape does not fit on the edge");
    err.with_residual("edge_residual", out.residual).with_residual("t1", out.t1).with_residual("t2", out.t2);
    throw err;
  }

  Point2 a;
  Point2 b;
  const std::optional<Edge> first = head(target, t - out.t2, a);
  const std::optional<Edge> last = tail(target, t + out.t1, b);
  if (distance(a, b) < kMinChord) throw SolverError("edge projection collapsed to a point");
  const Point2 insertion = b - a;
  EdgeSequence placed = shape.translated(-shape.front().start())
                            .rotated(angle_of(insertion) - angle_of(shape.opening()))
                            .translated(a);
  if (reflect) placed = placed.reflected(a, insertion);
  const EdgeSequence inner = pinned(placed, a, b);

  std::vector<Edge> edges;
  if (first) {
    edges.push_back(*first);
    out.origin.push_back({PieceOrigin::Source::before, 0});
  }
  for (std::size_t i = 0; i < inner.size(); ++i) {
    edges.push_back(inner[i]);
    out.origin.push_back({PieceOrigin::Source::shape, i});
  }
  if (last) {
    edges.push_back(*last);
    out.origin.push_back({PieceOrigin::Source::after, 0});
  }
  out.edges = EdgeSequence(std::move(edges));
  return out;
}

Edge quad_with_apex(Point2 start, Point2 end, Point2 apex) {
  const Point2 chord = end - start;
  const double len = norm(chord);
  if (len < kMinChord) throw GeometryError("zero-length chord");
  const Point2 x = chord / len;
  const Point2 q = apex - start;
  const double ax = dot(q, x);
  const double ay = cross(x, q);
  if (std::abs(ay) <= 1e-9 * len) throw GeometryError("apex lies on the chord");
  // In the chord frame y(t) = 2 t (1-t) cy peaks at t = 1/2 with B(1/2) = (L/4 + cx/2, cy/2).
  const double cx = 2.0 * ax - 0.5 * len;
  const double cy = 2.0 * ay;
  return Edge::quadratic(start, end, {cx / len, cy / len});
}

Edge sleeve_initial_guess(const Edge& opening, double rest_angle_deg) {
  RelControl c1{1.0 / 3.0, 0.0};
  RelControl c2{2.0 / 3.0, 0.0};
  if (const auto* cs = std::get_if<CubicShape>(&opening.shape())) {
    c1 = cs->c1;
    c2 = cs->c2;
  } else if (opening.kind() != EdgeKind::line) {
    throw GeometryError("sleeve inversion expects a cubic or straight opening curve");
  }
  const Point2 down = rotate({0.0, -1.0}, -deg2rad(rest_angle_deg));
  const Point2 end = opening.start() + down * opening.chord_length();
  return Edge::cubic(opening.start(), end, c1, {c2.u, -c2.v});
}

namespace {

struct SleeveTerms {
  double constraints;  // length and tangent terms
  double curvature;    // lambda * Cmax^2
};

SleeveTerms sleeve_terms(const Edge& curve, const SleeveProblem& p) {
  const Point2 d0 = curve.derivative(0.0);
  const Point2 d1 = curve.derivative(1.0);
  const double n0 = norm(d0);
  const double n1 = norm(d1);
  if (n0 == 0.0 || n1 == 0.0) return {HUGE_VAL, HUGE_VAL};
  const Point2 e0 = d0 / n0 - p.start_tangent;
  const Point2 e1 = d1 / n1 - p.end_tangent;
  const double dl = curve.length() - p.target_length;
  const double k = curve.max_curvature();
  return {dl * dl + dot(e0, e0) + dot(e1, e1), p.curvature_weight * k * k};
}

}  // namespace

double sleeve_energy(const Edge& curve, const SleeveProblem& p) {
  const SleeveTerms t = sleeve_terms(curve, p);
  return t.constraints + t.curvature;
}

namespace {

// Solve with the problem as given; invert_sleeve_curve calls this in the
// rest frame.
SleeveResult solve_sleeve(const SleeveProblem& p) {
  const Edge init = sleeve_initial_guess(p.opening, p.rest_angle_deg);
  const auto& cs = std::get<CubicShape>(init.shape());
  const Point2 start = init.start();
  const Point2 chord = init.chord();

  const auto build = [&](const std::vector<double>& x) {
    return Edge::cubic(start, init.end() + chord * x[4], {x[0], x[1]}, {x[2], x[3]});
  };
  const auto weighted = [&](double w) -> optimize::Objective {
    return [&, w](const std::vector<double>& x) {
      try {
        const SleeveTerms t = sleeve_terms(build(x), p);
        return w * t.constraints + t.curvature;
      } catch (const GeometryError&) {
        return HUGE_VAL;
      }
    };
  };
  const optimize::Objective energy = weighted(1.0);

  const optimize::Box box{{-1.0, -1.5, -1.0, -1.5, -0.5}, {2.0, 1.5, 2.0, 1.5, 1.0}};
  // Coarse 3^3 seeding over the two control offsets and the stretch.
  struct Seed {
    std::vector<double> x;
    double f;
  };
  std::vector<Seed> seeds;
  for (double dv1 : {-0.2, 0.0, 0.2}) {
    for (double dv2 : {-0.2, 0.0, 0.2}) {
      for (double s : {-0.1, 0.0, 0.1}) {
        std::vector<double> x = box.clamp({cs.c1.u, cs.c1.v + dv1, cs.c2.u, cs.c2.v + dv2, s});
        seeds.push_back({x, energy(x)});
      }
    }
  }
  std::stable_sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) { return a.f < b.f; });

  // Short screening runs from the best 3 seeds, then a full run from the
  // most promising one.
  optimize::Options screen;
  screen.max_iterations = 150;
  screen.max_restarts = 0;
  screen.ftol = 1e-8;
  screen.xtol = 1e-6;
  optimize::Result best;
  best.f = HUGE_VAL;
  for (int i = 0; i < 3; ++i) {
    optimize::Result r = optimize::nelder_mead(energy, seeds[i].x, box, screen);
    if (r.f < best.f) {
      for (double& t : r.trace) t = std::min(t, best.f);
      std::vector<double> trace = std::move(best.trace);
      trace.insert(trace.end(), r.trace.begin(), r.trace.end());
      best = std::move(r);
      best.trace = std::move(trace);
    }
  }
  {
    optimize::Result r = optimize::nelder_mead(energy, best.x, box);
    for (double& t : r.trace) t = std::min(t, best.f);
    best.trace.insert(best.trace.end(), r.trace.begin(), r.trace.end());
    if (r.f <= best.f) {
      best.x = std::move(r.x);
      best.f = r.f;
    }
  }

  const auto angle_error = [](Point2 a, Point2 b) {
    return rad2deg(std::acos(std::clamp(dot(a, b), -1.0, 1.0)));
  };
  SleeveResult out;
  out.trace = best.trace;
  const auto finish = [&](const std::vector<double>& x) {
    out.curve = build(x);
    out.energy = energy(x);
    out.length_error = std::abs(out.curve.length() - p.target_length);
    out.start_tangent_error = angle_error(out.curve.tangent(0.0), p.start_tangent);
    out.end_tangent_error = angle_error(out.curve.tangent(1.0), p.end_tangent);
    out.converged = out.length_error <= 1e-3 * p.target_length && out.start_tangent_error <= 1.0 &&
                    out.end_tangent_error <= 1.0;
  };
  finish(best.x);
  // The curvature term trades against the constraint terms, so the plain
  // minimum can sit just outside tolerance. Stiffen the constraints until
  // they hold, restarting from the previous solution each time.
  std::vector<double> x = best.x;
  for (double w = 10.0; !out.converged && w <= p.max_constraint_weight; w *= 10.0) {
    x = optimize::nelder_mead(weighted(w), x, box).x;
    finish(x);
    out.constraint_weight = w;
  }
  return out;
}

}  // namespace

SleeveResult invert_sleeve_curve(const SleeveProblem& p) {
  if (!(p.target_length > 0.0)) throw GeometryError("sleeve target length must be positive");
  if (std::abs(norm(p.start_tangent) - 1.0) > 1e-9 || std::abs(norm(p.end_tangent) - 1.0) > 1e-9) {
    throw GeometryError("sleeve target tangents must be unit vectors");
  }
  if (p.curvature_weight < 0.0) throw GeometryError("curvature weight must be non-negative");
  // The energy does not change under rotation, so solve with the rest angle
  // undone and turn the result back. Solutions for different angles are then
  // exact rotations of each other instead of differing by optimizer noise.
  const double theta = deg2rad(p.rest_angle_deg);
  SleeveProblem rest = p;
  rest.rest_angle_deg = 0.0;
  rest.start_tangent = rotate(p.start_tangent, theta);
  rest.end_tangent = rotate(p.end_tangent, theta);
  SleeveResult r = solve_sleeve(rest);
  if (theta == 0.0) return r;
  r.curve = r.curve.rotated(-theta, p.opening.start());
  r.start_tangent_error = rad2deg(std::acos(std::clamp(dot(r.curve.tangent(0.0), p.start_tangent), -1.0, 1.0)));
  r.end_tangent_error = rad2deg(std::acos(std::clamp(dot(r.curve.tangent(1.0), p.end_tangent), -1.0, 1.0)));
  r.converged = r.length_error <= 1e-3 * p.target_length && r.start_tangent_error <= 1.0 && r.end_tangent_error <= 1.0;
  return r;
}

}  // namespace seamkit
