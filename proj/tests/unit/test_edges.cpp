#include <doctest.h>

#include <algorithm>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "seamkit/edge.hpp"
#include "seamkit/edge_sequence.hpp"
#include "seamkit/error.hpp"

using namespace seamkit;
using std::numbers::pi;

namespace {

const Edge kSemicircle = Edge::arc({0, 0}, {2, 0}, 0.5);
const Edge kQuad = Edge::quadratic({0, 0}, {2, 0}, {0.5, 0.5});
// Controls on opposite sides of the chord.
const Edge kS = Edge::cubic({0, 0}, {6, 0}, {0.3, 0.4}, {0.7, -0.4});

void check_point(Point2 p, Point2 q, double tol = 1e-12) {
  CHECK(std::abs(p.x - q.x) <= tol);
  CHECK(std::abs(p.y - q.y) <= tol);
}

}  // namespace

TEST_CASE("eval") {
  check_point(Edge::line({0, 0}, {4, 0}).eval(0.5), {2, 0});
  check_point(kSemicircle.eval(0.5), {1, 1});
  check_point(kQuad.eval(0.5), {1, 0.5});
  CHECK_THROWS_AS(kQuad.eval(1.5), GeometryError);
  CHECK_THROWS_AS(kQuad.eval(-0.1), GeometryError);
}

TEST_CASE("eval hits the endpoints exactly") {
  oracle::Rng rng(3);
  for (EdgeKind k : {EdgeKind::line, EdgeKind::arc, EdgeKind::quadratic, EdgeKind::cubic}) {
    for (int i = 0; i < 50; ++i) {
      const Edge e = oracle::random_edge(rng, k);
      CHECK(e.eval(0.0) == e.start());
      CHECK(e.eval(1.0) == e.end());
    }
  }
}

TEST_CASE("length") {
  CHECK(Edge::line({0, 0}, {4, 0}).length() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(kSemicircle.length() == doctest::Approx(pi).epsilon(1e-12));

  const double ref = oracle::polyline_length(oracle::Curve(kQuad));
  // Frozen from the polyline oracle; equals sqrt(2) + asinh(1).
  CHECK(ref == doctest::Approx(2.2955871494).epsilon(1e-10));
  CHECK(std::abs(kQuad.length() - ref) <= 1e-6 * ref);
}

TEST_CASE("tangent") {
  const Point2 t = Edge::line({0, 0}, {4, 0}).tangent(0.37);
  check_point(t, {1, 0});
  check_point(kSemicircle.tangent(0.0), {0, 1}, 1e-12);

  const Edge c = Edge::cubic({1, 1}, {5, 2}, {0.2, 0.5}, {0.8, 0.3});
  const Point2 dir0 = normalized(c.absolute_controls()[0] - c.start());
  check_point(c.tangent(0.0), dir0, 1e-12);
  const oracle::Curve oc(c);
  for (double s : {0.0, 0.3, 0.5, 1.0}) {
    const Point2 fd = oracle::fd_tangent(oc, s);
    check_point(c.tangent(s), fd, 1e-5);
  }
}

TEST_CASE("tangent at a cusp is reported") {
  const Edge c = Edge::cubic({0, 0}, {4, 0}, {0, 0}, {0.5, 0.5});
  CHECK_THROWS_AS(c.tangent(0.0), GeometryError);
}

TEST_CASE("max curvature") {
  CHECK(Edge::line({0, 0}, {4, 0}).max_curvature() == 0.0);
  CHECK(kSemicircle.max_curvature() == doctest::Approx(1.0).epsilon(1e-12));
  const double ref = oracle::dense_max_curvature(oracle::Curve(kS));
  CHECK(std::abs(kS.max_curvature() - ref) <= 0.01 * ref);
}

TEST_CASE("max curvature reaches the 0.1% accuracy target on cusp-free curves") {
  oracle::Rng rng(17);
  for (EdgeKind k : {EdgeKind::quadratic, EdgeKind::cubic}) {
    for (int i = 0; i < 60; ++i) {
      const Edge e = oracle::random_edge(rng, k);
      const double ref = oracle::dense_max_curvature(oracle::Curve(e), 100000);
      CHECK(std::abs(e.max_curvature() - ref) <= 1e-3 * ref);
    }
  }
}

TEST_CASE("subdivide") {
  const EdgeSequence l = Edge::line({0, 0}, {4, 0}).subdivide(std::vector<double>{0.25, 0.5});
  REQUIRE(l.size() == 3);
  check_point(l[0].end(), {1, 0});
  check_point(l[1].end(), {2, 0});
  CHECK(l.is_chained());

  const EdgeSequence a = kSemicircle.subdivide(std::vector<double>{0.5});
  REQUIRE(a.size() == 2);
  check_point(a[0].end(), {1, 1}, 1e-12);
  CHECK(a[0].kind() == EdgeKind::arc);
  CHECK(a[0].length() == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(a[1].length() == doctest::Approx(pi / 2).epsilon(1e-12));

  const EdgeSequence q = kQuad.subdivide(std::vector<double>{0.5});
  const double half = oracle::polyline_length(oracle::Curve(kQuad)) / 2;
  for (const Edge& e : q) {
    CHECK(e.kind() == EdgeKind::quadratic);
    CHECK(std::abs(oracle::polyline_length(oracle::Curve(e)) - half) <= 1e-4 * half);
  }

  CHECK_THROWS_AS(kQuad.subdivide(std::vector<double>{0.6, 0.4}), GeometryError);
  CHECK_THROWS_AS(kQuad.subdivide(std::vector<double>{0.0}), GeometryError);
  CHECK_THROWS_AS(kQuad.subdivide(std::vector<double>{1.0}), GeometryError);
}

TEST_CASE("subdivide keeps length, endpoints and shape") {
  oracle::Rng rng(5);
  for (EdgeKind k : {EdgeKind::line, EdgeKind::arc, EdgeKind::quadratic, EdgeKind::cubic}) {
    for (int i = 0; i < 40; ++i) {
      const Edge e = oracle::random_edge(rng, k);
      std::vector<double> f = {rng.uniform(0.05, 0.3), rng.uniform(0.35, 0.6), rng.uniform(0.65, 0.95)};
      const EdgeSequence parts = e.subdivide(f);
      REQUIRE(parts.size() == 4);
      CHECK(parts.is_chained());
      CHECK(parts.front().start() == e.start());
      CHECK(parts.back().end() == e.end());
      CHECK(std::abs(parts.length() - e.length()) <= 1e-6 * e.length());
      double walked = 0;
      for (std::size_t j = 0; j < 3; ++j) {
        walked += parts[j].length();
        CHECK(walked / e.length() == doctest::Approx(f[j]).epsilon(1e-6));
      }
      // Every child sample lies on the parent (one-sided Hausdorff on samples).
      const oracle::Curve parent(e);
      for (const Edge& p : parts) {
        for (int s = 0; s <= 10; ++s) {
          const Point2 q = p.eval(s / 10.0);
          // Distance to the dense polyline of the parent.
          double best = 1e9;
          Point2 a = parent.point(0);
          for (int m = 1; m <= 4000; ++m) {
            const Point2 b = parent.point(m / 4000.0);
            const Point2 ab = b - a;
            const double h = std::clamp(((q - a).x * ab.x + (q - a).y * ab.y) / (ab.x * ab.x + ab.y * ab.y), 0.0, 1.0);
            best = std::min(best, oracle::dist(q, a + ab * h));
            a = b;
          }
          CHECK(best <= 1e-3);
        }
      }
    }
  }
}

TEST_CASE("absolute and relative control conversions") {
  const std::vector<Point2> c = kQuad.absolute_controls();
  REQUIRE(c.size() == 1);
  check_point(c[0], {1, 1});
  const Edge back = Edge::from_absolute_controls(EdgeKind::quadratic, {0, 0}, {2, 0}, c);
  CHECK(std::get<QuadShape>(back.shape()).control.u == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::get<QuadShape>(back.shape()).control.v == doctest::Approx(0.5).epsilon(1e-15));

  const Edge three = Edge::arc_from_three_points({0, 0}, {1, 1}, {2, 0});
  CHECK(std::get<ArcShape>(three.shape()).rel_sagitta == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(Edge::arc_from_three_points({0, 0}, {1, 0}, {2, 0}), GeometryError);

  const Edge r1 = Edge::arc_from_radius({0, 0}, {2, 0}, 1.0);
  CHECK(std::get<ArcShape>(r1.shape()).rel_sagitta == doctest::Approx(0.5).epsilon(1e-9));
  CHECK_THROWS_AS(Edge::arc_from_radius({0, 0}, {2, 0}, 0.9), GeometryError);
}

TEST_CASE("radius form honours the four arc options") {
  const double r = 2.0, h = std::sqrt(3.0);
  const auto sag = [&](ArcOptions o) {
    return std::get<ArcShape>(Edge::arc_from_radius({0, 0}, {2, 0}, r, o).shape()).rel_sagitta;
  };
  CHECK(sag({false, false}) == doctest::Approx((r - h) / 2));
  CHECK(sag({true, false}) == doctest::Approx((r + h) / 2));
  CHECK(sag({false, true}) == doctest::Approx(-(r - h) / 2));
  CHECK(sag({true, true}) == doctest::Approx(-(r + h) / 2));
  for (ArcOptions o : {ArcOptions{false, false}, ArcOptions{true, false}, ArcOptions{false, true}, ArcOptions{true, true}}) {
    CHECK(Edge::arc_from_radius({0, 0}, {2, 0}, r, o).arc_radius() == doctest::Approx(r).epsilon(1e-12));
  }
}

TEST_CASE("absolute controls round-trip within 1e-9") {
  oracle::Rng rng(8);
  for (EdgeKind k : {EdgeKind::arc, EdgeKind::quadratic, EdgeKind::cubic}) {
    for (int i = 0; i < 100; ++i) {
      const Edge e = oracle::random_edge(rng, k);
      const std::vector<Point2> abs = e.absolute_controls();
      const Edge back = Edge::from_absolute_controls(k, e.start(), e.end(), abs);
      const std::vector<Point2> again = back.absolute_controls();
      REQUIRE(abs.size() == again.size());
      for (std::size_t j = 0; j < abs.size(); ++j) CHECK(oracle::dist(abs[j], again[j]) <= 1e-9);
      for (double t : {0.1, 0.5, 0.9}) CHECK(oracle::dist(e.eval(t), back.eval(t)) <= 1e-9);
    }
  }
}

TEST_CASE("extremal points") {
  CHECK(Edge::line({0, 0}, {4, 0}).extremal_points().empty());
  const std::vector<Point2> apex = kSemicircle.extremal_points();
  REQUIRE(apex.size() == 1);
  check_point(apex[0], {1, 1}, 1e-9);

  const std::vector<Point2> got = kS.extremal_points();
  const std::vector<Point2> ref = oracle::dense_extrema(kS);
  REQUIRE(ref.size() == 2);
  REQUIRE(got.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) CHECK(oracle::dist(got[i], ref[i]) <= 1e-3);
}

TEST_CASE("extremal points agree with dense sampling on random curves") {
  oracle::Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const Edge e = oracle::random_edge(rng, i % 2 ? EdgeKind::cubic : EdgeKind::quadratic);
    const std::vector<Point2> got = e.extremal_points();
    const std::vector<Point2> ref = oracle::dense_extrema(e);
    REQUIRE(got.size() == ref.size());
    for (std::size_t j = 0; j < got.size(); ++j) CHECK(oracle::dist(got[j], ref[j]) <= 1e-2);
  }
}

TEST_CASE("uniform scaling scales length and keeps the shape descriptor") {
  oracle::Rng rng(4);
  for (EdgeKind k : {EdgeKind::line, EdgeKind::arc, EdgeKind::quadratic, EdgeKind::cubic}) {
    for (int i = 0; i < 30; ++i) {
      const Edge e = oracle::random_edge(rng, k);
      const double s = rng.uniform(0.2, 5.0);
      const Edge big = e.scaled(s, rng.point(5));
      CHECK(big.shape() == e.shape());
      CHECK(big.length() == doctest::Approx(s * e.length()).epsilon(1e-9));
      if (k != EdgeKind::line) CHECK(big.max_curvature() == doctest::Approx(e.max_curvature() / s).epsilon(1e-6));
    }
  }
  CHECK_THROWS_AS(kQuad.scaled(0.0), GeometryError);
}

TEST_CASE("reversal traces the same curve backwards") {
  oracle::Rng rng(6);
  for (EdgeKind k : {EdgeKind::line, EdgeKind::arc, EdgeKind::quadratic, EdgeKind::cubic}) {
    for (int i = 0; i < 30; ++i) {
      const Edge e = oracle::random_edge(rng, k);
      const Edge r = e.reversed();
      for (double t : {0.0, 0.2, 0.5, 0.8, 1.0}) CHECK(oracle::dist(r.eval(t), e.eval(1 - t)) <= 1e-6);
    }
  }
  CHECK(std::get<ArcShape>(kSemicircle.reversed().shape()).rel_sagitta == -0.5);
}

TEST_CASE("zero-length edges are rejected") {
  CHECK_THROWS_AS(Edge::line({1, 1}, {1, 1 + 1e-7}), GeometryError);
  CHECK_NOTHROW(Edge::line({1, 1}, {1, 1 + 1e-5}));
}
