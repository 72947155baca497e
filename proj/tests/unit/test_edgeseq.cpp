#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "seamkit/edge_sequence.hpp"
#include "seamkit/error.hpp"

using namespace seamkit;

namespace {

EdgeSequence square() { return EdgeSequence::from_verts({{0, 0}, {2, 0}, {2, 2}, {0, 2}}, true); }

// Star-shaped random polygon: sorted angles, random radii.
std::vector<Point2> random_polygon(oracle::Rng& rng) {
  const int n = rng.integer(3, 12);
  std::vector<double> angles(n);
  for (double& a : angles) a = rng.uniform(0, 2 * std::numbers::pi);
  std::sort(angles.begin(), angles.end());
  std::vector<Point2> out;
  for (double a : angles) {
    const double r = rng.uniform(1, 10);
    const Point2 p{r * std::cos(a), r * std::sin(a)};
    if (out.empty() || oracle::dist(out.back(), p) > 1e-3) out.push_back(p);
  }
  if (out.size() < 3) return {{0, 0}, {1, 0}, {0, 1}};
  return out;
}

}  // namespace

TEST_CASE("list operations") {
  EdgeSequence s;
  s.append(Edge::line({0, 0}, {1, 0}));
  CHECK(s.size() == 1);

  EdgeSequence tri = EdgeSequence::from_verts({{0, 0}, {1, 0}, {0, 1}}, true);
  REQUIRE(tri.is_loop());
  tri.remove(1);
  CHECK_FALSE(tri.is_loop());

  EdgeSequence sq = square();
  const EdgeSequence halves = sq[1].subdivide(std::vector<double>{0.5});
  const std::size_t at = sq.substitute(EdgeSequence{sq[1]}, halves);
  CHECK(at == 1);
  CHECK(sq.size() == 5);
  CHECK(sq.is_chained());
  CHECK(sq.is_loop());

  CHECK_THROWS_AS(sq[9], GeometryError);
  CHECK_THROWS_AS(sq.substitute(EdgeSequence{Edge::line({5, 5}, {6, 6})}, halves), GeometryError);
  const EdgeSequence mid = sq.slice(1, 3);
  CHECK(mid.size() == 2);
  CHECK(mid[0] == sq[1]);
}

TEST_CASE("transforms") {
  const EdgeSequence moved = square().translated({1, 0});
  const std::vector<Point2> a = square().vertices(), b = moved.vertices();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == a[i] + Point2{1, 0});
  CHECK(moved.is_loop());

  const EdgeSequence arc{Edge::arc({0, 0}, {2, 0}, 0.5)};
  const EdgeSequence flipped = arc.reflected({0, 0}, {1, 0});
  CHECK(std::get<ArcShape>(flipped[0].shape()).rel_sagitta == -0.5);
  CHECK(oracle::dist(flipped[0].eval(0.5), {1, -1}) <= 1e-12);

  const EdgeSequence c{Edge::cubic({1, 2}, {4, 3}, {0.2, 0.3}, {0.7, -0.2})};
  const EdgeSequence back = c.rotated(std::numbers::pi / 2, {1, 1}).rotated(-std::numbers::pi / 2, {1, 1});
  CHECK(oracle::dist(back[0].start(), c[0].start()) <= 1e-9);
  CHECK(oracle::dist(back[0].end(), c[0].end()) <= 1e-9);
  CHECK(back[0].shape() == c[0].shape());

  CHECK_THROWS_AS(c.reflected({0, 0}, {0, 0}), GeometryError);
  CHECK_THROWS_AS(c.scaled(-1.0), GeometryError);
}

TEST_CASE("transforms keep chaining and lengths; reflection is an involution") {
  oracle::Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    EdgeSequence loop = EdgeSequence::from_verts(random_polygon(rng), true);
    // Curve some edges so the shape data is exercised.
    for (std::size_t k = 0; k < loop.size(); k += 2) {
      loop.set(k, Edge::cubic(loop[k].start(), loop[k].end(), {rng.uniform(0, 0.5), rng.uniform(-0.3, 0.3)},
                              {rng.uniform(0.5, 1), rng.uniform(-0.3, 0.3)}));
    }
    const Point2 axis_pt = rng.point(5), axis_dir{rng.uniform(-1, 1), rng.uniform(0.1, 1)};
    const double s = rng.uniform(0.5, 2);
    const EdgeSequence variants[] = {loop.translated(rng.point(5)), loop.rotated(rng.uniform(-3, 3), rng.point(5)),
                                     loop.reflected(axis_pt, axis_dir)};
    for (const EdgeSequence& v : variants) {
      CHECK(v.is_loop());
      for (std::size_t k = 0; k < loop.size(); ++k) CHECK(v[k].length() == doctest::Approx(loop[k].length()).epsilon(1e-9));
    }
    const EdgeSequence big = loop.scaled(s, rng.point(5));
    CHECK(big.is_loop());
    CHECK(big.length() == doctest::Approx(s * loop.length()).epsilon(1e-9));

    const EdgeSequence twice = variants[2].reflected(axis_pt, axis_dir);
    for (std::size_t k = 0; k < loop.size(); ++k) {
      CHECK(oracle::dist(twice[k].start(), loop[k].start()) <= 1e-9);
      CHECK(twice[k].shape() == loop[k].shape());
    }
  }
}

TEST_CASE("from_verts") {
  const EdgeSequence sq = square();
  CHECK(sq.size() == 4);
  CHECK(sq.is_loop());
  CHECK(EdgeSequence::from_verts({{0, 0}, {4, 0}}, false).size() == 1);
  CHECK_THROWS_AS(EdgeSequence::from_verts({{0, 0}, {0, 0}, {1, 1}}, false), GeometryError);
}

TEST_CASE("from_verts always closes random simple polygons") {
  oracle::Rng rng(2);
  for (int i = 0; i < 200; ++i) CHECK(EdgeSequence::from_verts(random_polygon(rng), true).is_loop());
}

TEST_CASE("dart shape") {
  const EdgeSequence d = EdgeSequence::dart_shape(2, 3);
  REQUIRE(d.size() == 2);
  CHECK(d[0].start() == Point2{0, 0});
  CHECK(d[0].end() == Point2{1, -3});
  CHECK(d[1].end() == Point2{2, 0});
  CHECK(d.length() == doctest::Approx(2 * std::sqrt(10.0)).epsilon(1e-14));
  CHECK(d.opening() == Point2{2, 0});
  CHECK(d.is_chained());
  CHECK_FALSE(d.is_loop());
  CHECK_THROWS_AS(EdgeSequence::dart_shape(0, 3), GeometryError);
  CHECK_THROWS_AS(EdgeSequence::dart_shape(2, -1), GeometryError);
}

TEST_CASE("chain tolerance") {
  const EdgeSequence near{Edge::line({0, 0}, {1, 0}), Edge::line({1, 5e-7}, {2, 0})};
  const EdgeSequence far{Edge::line({0, 0}, {1, 0}), Edge::line({1, 5e-6}, {2, 0})};
  CHECK(near.is_chained());
  CHECK_FALSE(far.is_chained());
}
