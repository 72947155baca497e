#include "seamkit/edge.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "seamkit/edge_sequence.hpp"
#include "seamkit/error.hpp"

namespace seamkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGaussNodes = 16;
constexpr double kLengthTolerance = 1e-7;
constexpr double kInversionTolerance = 1e-10;
constexpr int kCurvatureSamples = 200;

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

double sign(double v) { return v < 0.0 ? -1.0 : 1.0; }

struct GaussLegendre {
  std::array<double, kGaussNodes> nodes{};
  std::array<double, kGaussNodes> weights{};

  // Newton iteration on P_n from the Chebyshev initial guesses.
  GaussLegendre() {
    const int n = kGaussNodes;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

const GaussLegendre& gauss() {
  static const GaussLegendre g;
  return g;
}

double gauss_segment(const kernels::PowerCubic& pc, double a, double b) {
  const auto& g = gauss();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  std::array<double, kGaussNodes> t{};
  std::array<double, kGaussNodes> speed{};
  for (int i = 0; i < kGaussNodes; ++i) t[i] = mid + half * g.nodes[i];
  kernels::eval_speeds(pc, t, speed);
  double sum = 0.0;
  for (int i = 0; i < kGaussNodes; ++i) sum += g.weights[i] * speed[i];
  return sum * half;
}

double adaptive_length(const kernels::PowerCubic& pc, double a, double b, double whole,
                       int depth) {
  const double m = 0.5 * (a + b);
  const double left = gauss_segment(pc, a, m);
  const double right = gauss_segment(pc, m, b);
  const double refined = left + right;
  if (depth >= 40 || std::abs(refined - whole) <= kLengthTolerance * std::abs(refined) ||
      std::abs(refined - whole) < 1e-15) {
    return refined;
  }
  return adaptive_length(pc, a, m, left, depth + 1) + adaptive_length(pc, m, b, right, depth + 1);
}

// Bernstein control polygon of a Bézier edge, as absolute points.
std::vector<Point2> bezier_polygon(const Edge& e) {
  std::vector<Point2> pts{e.start()};
  for (Point2 c : e.absolute_controls()) pts.push_back(c);
  pts.push_back(e.end());
  return pts;
}

Point2 second_derivative(const std::vector<Point2>& p, double t) {
  if (p.size() == 3) return (p[2] - p[1] * 2.0 + p[0]) * 2.0;
  return (p[2] - p[1] * 2.0 + p[0]) * (6.0 * (1.0 - t)) + (p[3] - p[2] * 2.0 + p[1]) * (6.0 * t);
}

// de Casteljau split of a Bézier control polygon.
std::pair<std::vector<Point2>, std::vector<Point2>> casteljau(std::vector<Point2> pts, double t) {
  std::vector<Point2> left{pts.front()};
  std::vector<Point2> right{pts.back()};
  while (pts.size() > 1) {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) pts[i] = lerp(pts[i], pts[i + 1], t);
    pts.pop_back();
    left.push_back(pts.front());
    right.push_back(pts.back());
  }
  std::reverse(right.begin(), right.end());
  return {left, right};
}

Edge bezier_from_polygon(const std::vector<Point2>& p) {
  if (p.size() == 3) return Edge::from_absolute_controls(EdgeKind::quadratic, p[0], p[2], {&p[1], 1});
  return Edge::from_absolute_controls(EdgeKind::cubic, p[0], p[3], {&p[1], 2});
}

void check_fraction_list(std::span<const double> values, const char* what) {
  double prev = 0.0;
  for (double v : values) {
    if (!(v > prev) || !(v < 1.0)) {
      throw GeometryError(std::string(what) + " must be strictly increasing inside (0,1)");
    }
    prev = v;
  }
}

}  // namespace

Edge::Edge(Point2 start, Point2 end, EdgeShape shape)
    : start_(start), end_(end), shape_(shape) {
  if (!is_finite(start) || !is_finite(end)) throw GeometryError("edge endpoints must be finite");
  if (distance(start, end) < kMinChord) throw GeometryError("zero-length edge");
  if (const auto* a = std::get_if<ArcShape>(&shape_)) {
    if (!(std::abs(a->rel_sagitta) > 0.0) || !std::isfinite(a->rel_sagitta)) {
      throw GeometryError("arc sagitta must be finite and non-zero");
    }
  }
}

Edge Edge::line(Point2 start, Point2 end) { return Edge(start, end, LineShape{}); }

Edge Edge::arc(Point2 start, Point2 end, double rel_sagitta) {
  return Edge(start, end, ArcShape{rel_sagitta});
}

Edge Edge::quadratic(Point2 start, Point2 end, RelControl control) {
  return Edge(start, end, QuadShape{control});
}

Edge Edge::cubic(Point2 start, Point2 end, RelControl c1, RelControl c2) {
  return Edge(start, end, CubicShape{c1, c2});
}

Edge Edge::from_absolute_controls(EdgeKind kind, Point2 start, Point2 end,
                                  std::span<const Point2> controls) {
  const std::size_t expected = kind == EdgeKind::line ? 0 : kind == EdgeKind::cubic ? 2 : 1;
  if (controls.size() != expected) throw GeometryError("wrong number of control points");
  Edge base = line(start, end);
  switch (kind) {
    case EdgeKind::line: return base;
    case EdgeKind::arc: return arc_from_three_points(start, controls[0], end);
    case EdgeKind::quadratic: return quadratic(start, end, base.to_relative(controls[0]));
    case EdgeKind::cubic:
      return cubic(start, end, base.to_relative(controls[0]), base.to_relative(controls[1]));
  }
  return base;
}

Edge Edge::arc_from_three_points(Point2 start, Point2 on_arc, Point2 end) {
  const Point2 a = on_arc - start;
  const Point2 b = end - start;
  const double d = 2.0 * cross(a, b);
  const double scale = dot(b, b);
  if (std::abs(d) <= 1e-12 * std::max(scale, dot(a, a))) {
    throw GeometryError("three-point arc input is collinear");
  }
  const Point2 center = start + Point2{b.y * dot(a, a) - a.y * dot(b, b),
                                       a.x * dot(b, b) - b.x * dot(a, a)} / d;
  const double r = distance(center, start);
  const double len = norm(b);
  const Point2 n = perp(b) / len;
  const Point2 mid = (start + end) * 0.5;
  const double side = sign(cross(b, a));
  const double h = dot(center - mid, n) + side * r;
  return arc(start, end, h / len);
}

Edge Edge::arc_from_radius(Point2 start, Point2 end, double radius, ArcOptions options) {
  const double half = 0.5 * distance(start, end);
  if (!(radius >= half * (1.0 - 1e-12))) throw GeometryError("arc radius is smaller than half the chord");
  const double q = std::sqrt(std::max(radius * radius - half * half, 0.0));
  const double h = options.large_arc ? radius + q : radius - q;
  return arc(start, end, (options.right ? -h : h) / (2.0 * half));
}

Point2 Edge::to_absolute(RelControl c) const {
  const Point2 d = chord();
  return start_ + d * c.u + perp(d) * c.v;
}

RelControl Edge::to_relative(Point2 p) const {
  const Point2 d = chord();
  const double l2 = dot(d, d);
  const Point2 q = p - start_;
  return {dot(q, d) / l2, cross(d, q) / l2};
}

double Edge::arc_radius() const {
  const double rel = std::get<ArcShape>(shape_).rel_sagitta;
  return chord_length() * (rel * rel + 0.25) / (2.0 * std::abs(rel));
}

double Edge::arc_sweep() const {
  const double rel = std::get<ArcShape>(shape_).rel_sagitta;
  return -sign(rel) * 4.0 * std::atan(2.0 * std::abs(rel));
}

double Edge::absolute_sagitta() const {
  return std::get<ArcShape>(shape_).rel_sagitta * chord_length();
}

Point2 Edge::arc_center() const {
  const double len = chord_length();
  const Point2 n = perp(chord()) / len;
  const double h = absolute_sagitta();
  return (start_ + end_) * 0.5 + n * (h - sign(h) * arc_radius());
}

Point2 Edge::eval(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw GeometryError("edge parameter out of range [0,1]");
  if (t == 0.0) return start_;
  if (t == 1.0) return end_;
  return std::visit(
      Overloaded{
          [&](const LineShape&) { return lerp(start_, end_, t); },
          [&](const ArcShape&) {
            const double phi = arc_sweep() * t;
            const Point2 d = start_ - arc_center();
            const double s = std::sin(phi);
            const double cm1 = -2.0 * std::sin(0.5 * phi) * std::sin(0.5 * phi);
            return start_ + Point2{cm1 * d.x - s * d.y, s * d.x + cm1 * d.y};
          },
          [&](const QuadShape& q) {
            const Point2 c = to_absolute(q.control);
            const double mt = 1.0 - t;
            return start_ * (mt * mt) + c * (2.0 * mt * t) + end_ * (t * t);
          },
          [&](const CubicShape& cs) {
            const Point2 c1 = to_absolute(cs.c1);
            const Point2 c2 = to_absolute(cs.c2);
            const double mt = 1.0 - t;
            return start_ * (mt * mt * mt) + c1 * (3.0 * mt * mt * t) + c2 * (3.0 * mt * t * t) +
                   end_ * (t * t * t);
          },
      },
      shape_);
}

Point2 Edge::derivative(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw GeometryError("edge parameter out of range [0,1]");
  return std::visit(
      Overloaded{
          [&](const LineShape&) { return chord(); },
          [&](const ArcShape&) {
            const double sweep = arc_sweep();
            const Point2 radial = rotate(start_ - arc_center(), sweep * t);
            return perp(radial) * sweep;
          },
          [&](const QuadShape& q) {
            const Point2 c = to_absolute(q.control);
            return (c - start_) * (2.0 * (1.0 - t)) + (end_ - c) * (2.0 * t);
          },
          [&](const CubicShape& cs) {
            const Point2 c1 = to_absolute(cs.c1);
            const Point2 c2 = to_absolute(cs.c2);
            const double mt = 1.0 - t;
            return (c1 - start_) * (3.0 * mt * mt) + (c2 - c1) * (6.0 * mt * t) +
                   (end_ - c2) * (3.0 * t * t);
          },
      },
      shape_);
}

Point2 Edge::tangent(double t) const {
  const Point2 d = derivative(t);
  const double n = norm(d);
  if (!(n > 1e-12 * chord_length())) {
    throw GeometryError("degenerate tangent: curve derivative vanishes at t=" + std::to_string(t));
  }
  return d / n;
}

double Edge::curvature(double t) const {
  switch (kind()) {
    case EdgeKind::line: return 0.0;
    case EdgeKind::arc: return sign(arc_sweep()) / arc_radius();
    default: break;
  }
  const Point2 d1 = derivative(t);
  const Point2 d2 = second_derivative(bezier_polygon(*this), t);
  const double sp = norm(d1);
  if (sp == 0.0) return std::numeric_limits<double>::infinity();
  return cross(d1, d2) / (sp * sp * sp);
}

double Edge::length() const {
  switch (kind()) {
    case EdgeKind::line: return chord_length();
    case EdgeKind::arc: return arc_radius() * std::abs(arc_sweep());
    default: return length_between(0.0, 1.0);
  }
}

double Edge::length_between(double t0, double t1) const {
  if (!(t0 >= 0.0 && t1 <= 1.0 && t0 <= t1)) throw GeometryError("invalid parameter interval");
  if (t0 == t1) return 0.0;
  if (kind() == EdgeKind::line || kind() == EdgeKind::arc) return (t1 - t0) * length();
  const kernels::PowerCubic pc = power_cubic();
  return adaptive_length(pc, t0, t1, gauss_segment(pc, t0, t1), 0);
}

double Edge::max_curvature() const {
  switch (kind()) {
    case EdgeKind::line: return 0.0;
    case EdgeKind::arc: return 1.0 / arc_radius();
    default: break;
  }
  const kernels::PowerCubic pc = power_cubic();
  std::array<double, kCurvatureSamples> t{};
  std::array<double, kCurvatureSamples> k{};
  for (int i = 0; i < kCurvatureSamples; ++i) t[i] = static_cast<double>(i) / (kCurvatureSamples - 1);
  kernels::eval_curvatures(pc, t, k);
  int best = 0;
  for (int i = 0; i < kCurvatureSamples; ++i) {
    if (std::isinf(k[i])) return std::numeric_limits<double>::infinity();
    if (std::abs(k[i]) > std::abs(k[best])) best = i;
  }
  // Refine by resampling the bracket around the best sample; each round
  // shrinks it 16x. |k| is flat at its maximum, so a 1e-8 bracket pins the
  // value to round-off.
  double a = t[std::max(best - 1, 0)];
  double b = t[std::min(best + 1, kCurvatureSamples - 1)];
  double kmax = std::abs(k[best]);
  constexpr int kRefine = 33;
  std::array<double, kRefine> rt{};
  std::array<double, kRefine> rk{};
  while (b - a > 1e-8) {
    for (int i = 0; i < kRefine; ++i) rt[i] = a + (b - a) * i / (kRefine - 1);
    kernels::eval_curvatures(pc, rt, rk);
    int j = 0;
    for (int i = 1; i < kRefine; ++i) {
      if (std::abs(rk[i]) > std::abs(rk[j])) j = i;
    }
    kmax = std::max(kmax, std::abs(rk[j]));
    const double na = rt[std::max(j - 1, 0)];
    const double nb = rt[std::min(j + 1, kRefine - 1)];
    a = na;
    b = nb;
  }
  return kmax;
}

double Edge::param_at_fraction(double fraction) const {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw GeometryError("length fraction out of range [0,1]");
  if (kind() == EdgeKind::line || kind() == EdgeKind::arc) return fraction;
  if (fraction == 0.0 || fraction == 1.0) return fraction;
  const double target = fraction * length();
  double lo = 0.0;
  double hi = 1.0;
  double s_lo = 0.0;
  while (hi - lo > kInversionTolerance) {
    const double mid = 0.5 * (lo + hi);
    const double s_mid = s_lo + length_between(lo, mid);
    if (s_mid < target) {
      lo = mid;
      s_lo = s_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double Edge::fraction_at_param(double t) const {
  if (kind() == EdgeKind::line || kind() == EdgeKind::arc) return t;
  return length_between(0.0, t) / length();
}

std::vector<Edge> Edge::split_at_params(std::span<const double> params) const {
  check_fraction_list(params, "split parameters");
  std::vector<Edge> out;
  out.reserve(params.size() + 1);
  switch (kind()) {
    case EdgeKind::line:
    case EdgeKind::arc: {
      const bool is_arc = kind() == EdgeKind::arc;
      const double sweep = is_arc ? arc_sweep() : 0.0;
      Point2 prev = start_;
      double prev_t = 0.0;
      for (std::size_t i = 0; i <= params.size(); ++i) {
        const double t = i < params.size() ? params[i] : 1.0;
        const Point2 p = i < params.size() ? eval(t) : end_;
        if (is_arc) {
          const double part = std::abs(sweep) * (t - prev_t);
          const double rel = sign(std::get<ArcShape>(shape_).rel_sagitta) * std::tan(part / 4.0) / 2.0;
          out.push_back(arc(prev, p, rel));
        } else {
          out.push_back(line(prev, p));
        }
        prev = p;
        prev_t = t;
      }
      return out;
    }
    default: break;
  }
  std::vector<Point2> rest = bezier_polygon(*this);
  double consumed = 0.0;
  for (double t : params) {
    const double local = (t - consumed) / (1.0 - consumed);
    auto [left, right] = casteljau(rest, local);
    out.push_back(bezier_from_polygon(left));
    rest = std::move(right);
    consumed = t;
  }
  rest.back() = end_;
  out.push_back(bezier_from_polygon(rest));
  return out;
}

EdgeSequence Edge::subdivide(std::span<const double> fractions) const {
  check_fraction_list(fractions, "subdivision fractions");
  std::vector<double> params;
  params.reserve(fractions.size());
  for (double f : fractions) params.push_back(param_at_fraction(f));
  return EdgeSequence(split_at_params(params));
}

std::vector<Point2> Edge::absolute_controls() const {
  return std::visit(Overloaded{
                        [&](const LineShape&) { return std::vector<Point2>{}; },
                        [&](const ArcShape&) { return std::vector<Point2>{eval(0.5)}; },
                        [&](const QuadShape& q) { return std::vector<Point2>{to_absolute(q.control)}; },
                        [&](const CubicShape& c) {
                          return std::vector<Point2>{to_absolute(c.c1), to_absolute(c.c2)};
                        },
                    },
                    shape_);
}

std::vector<double> Edge::extremal_params() const {
  switch (kind()) {
    case EdgeKind::line: return {};
    case EdgeKind::arc: return {0.5};
    default: break;
  }
  // Signed chord distance d(t) = n . (B(t) - start) is a cubic with d(0) = 0;
  // its critical points inside (0,1) are the lobe extrema.
  const kernels::PowerCubic pc = power_cubic();
  const Point2 n = perp(chord());
  const double a1 = n.x * pc.x1 + n.y * pc.y1;
  const double a2 = n.x * pc.x2 + n.y * pc.y2;
  const double a3 = n.x * pc.x3 + n.y * pc.y3;
  const double qa = 3.0 * a3;
  const double qb = 2.0 * a2;
  const double qc = a1;
  const double scale = std::max({std::abs(qa), std::abs(qb), std::abs(qc)});
  std::vector<double> roots;
  if (scale == 0.0) return roots;
  if (std::abs(qa) <= 1e-12 * scale) {
    if (std::abs(qb) > 1e-12 * scale) roots.push_back(-qc / qb);
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc > 1e-14 * scale * scale) {
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (qb + (qb >= 0.0 ? sq : -sq));
      roots.push_back(q / qa);
      if (q != 0.0) roots.push_back(qc / q);
    }
  }
  const double l2 = dot(chord(), chord());
  std::vector<double> out;
  for (double t : roots) {
    if (!(t > 1e-9 && t < 1.0 - 1e-9)) continue;
    const double d = ((a3 * t + a2) * t + a1) * t;
    if (std::abs(d) > 1e-12 * l2) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point2> Edge::extremal_points() const {
  std::vector<Point2> out;
  for (double t : extremal_params()) out.push_back(eval(t));
  return out;
}

Edge Edge::reversed() const {
  return std::visit(
      Overloaded{
          [&](const LineShape&) { return line(end_, start_); },
          [&](const ArcShape& a) { return arc(end_, start_, -a.rel_sagitta); },
          [&](const QuadShape& q) {
            return quadratic(end_, start_, {1.0 - q.control.u, -q.control.v});
          },
          [&](const CubicShape& c) {
            return cubic(end_, start_, {1.0 - c.c2.u, -c.c2.v}, {1.0 - c.c1.u, -c.c1.v});
          },
      },
      shape_);
}

Edge Edge::with_endpoints(Point2 start, Point2 end) const { return Edge(start, end, shape_); }

Edge Edge::translated(Point2 offset) const { return with_endpoints(start_ + offset, end_ + offset); }

Edge Edge::rotated(double radians, Point2 pivot) const {
  return with_endpoints(rotate(start_, radians, pivot), rotate(end_, radians, pivot));
}

Edge Edge::scaled(double factor, Point2 pivot) const {
  if (!(factor > 0.0)) throw GeometryError("scale factor must be positive");
  return with_endpoints(pivot + (start_ - pivot) * factor, pivot + (end_ - pivot) * factor);
}

Edge Edge::reflected(Point2 on_axis, Point2 dir) const {
  if (!(norm(dir) > 0.0)) throw GeometryError("reflection axis direction has zero length");
  const Point2 s = reflect(start_, on_axis, dir);
  const Point2 e = reflect(end_, on_axis, dir);
  return std::visit(Overloaded{
                        [&](const LineShape&) { return line(s, e); },
                        [&](const ArcShape& a) { return arc(s, e, -a.rel_sagitta); },
                        [&](const QuadShape& q) { return quadratic(s, e, {q.control.u, -q.control.v}); },
                        [&](const CubicShape& c) {
                          return cubic(s, e, {c.c1.u, -c.c1.v}, {c.c2.u, -c.c2.v});
                        },
                    },
                    shape_);
}

kernels::PowerCubic Edge::power_cubic() const {
  if (kind() == EdgeKind::quadratic) {
    const Point2 c = to_absolute(std::get<QuadShape>(shape_).control);
    const Point2 c1 = start_ + (c - start_) * (2.0 / 3.0);
    const Point2 c2 = end_ + (c - end_) * (2.0 / 3.0);
    return kernels::from_bezier(start_.x, start_.y, c1.x, c1.y, c2.x, c2.y, end_.x, end_.y);
  }
  if (kind() == EdgeKind::cubic) {
    const auto& cs = std::get<CubicShape>(shape_);
    const Point2 c1 = to_absolute(cs.c1);
    const Point2 c2 = to_absolute(cs.c2);
    return kernels::from_bezier(start_.x, start_.y, c1.x, c1.y, c2.x, c2.y, end_.x, end_.y);
  }
  throw GeometryError("power basis is only defined for Bézier edges");
}

}  // namespace seamkit
