#include "seamkit/edge_sequence.hpp"

#include <algorithm>
#include <string>

#include "seamkit/error.hpp"

namespace seamkit {

EdgeSequence EdgeSequence::from_verts(std::span<const Point2> vertices, bool loop) {
  if (vertices.size() < (loop ? 3u : 2u)) {
    throw GeometryError(loop ? "a loop needs at least 3 vertices" : "need at least 2 vertices");
  }
  std::vector<Edge> edges;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (distance(vertices[i], vertices[i + 1]) < kMinChord) {
      throw GeometryError("duplicate consecutive vertices at index " + std::to_string(i));
    }
    edges.push_back(Edge::line(vertices[i], vertices[i + 1]));
  }
  if (loop) {
    if (distance(vertices[n - 1], vertices[0]) < kMinChord) {
      throw GeometryError("last vertex repeats the first; the loop closes itself");
    }
    edges.push_back(Edge::line(vertices[n - 1], vertices[0]));
  }
  return EdgeSequence(std::move(edges));
}

EdgeSequence EdgeSequence::dart_shape(double width, double depth) {
  if (!(width > 0.0) || !(depth > 0.0)) throw GeometryError("dart width and depth must be positive");
  return from_verts({{0.0, 0.0}, {width / 2.0, -depth}, {width, 0.0}}, false);
}

const Edge& EdgeSequence::operator[](std::size_t i) const {
  if (i >= edges_.size()) {
    throw GeometryError("edge index " + std::to_string(i) + " out of range (size " +
                        std::to_string(edges_.size()) + ")");
  }
  return edges_[i];
}

EdgeSequence EdgeSequence::slice(std::size_t first, std::size_t last) const {
  if (first > last || last > edges_.size()) throw GeometryError("slice out of range");
  return EdgeSequence(std::vector<Edge>(edges_.begin() + first, edges_.begin() + last));
}

void EdgeSequence::append(const EdgeSequence& seq) {
  edges_.insert(edges_.end(), seq.edges_.begin(), seq.edges_.end());
}

void EdgeSequence::insert(std::size_t index, const Edge& e) {
  if (index > edges_.size()) throw GeometryError("insert index out of range");
  edges_.insert(edges_.begin() + index, e);
}

void EdgeSequence::insert(std::size_t index, const EdgeSequence& seq) {
  if (index > edges_.size()) throw GeometryError("insert index out of range");
  edges_.insert(edges_.begin() + index, seq.edges_.begin(), seq.edges_.end());
}

void EdgeSequence::remove(std::size_t index) {
  if (index >= edges_.size()) throw GeometryError("remove index out of range");
  edges_.erase(edges_.begin() + index);
}

void EdgeSequence::set(std::size_t index, const Edge& e) {
  if (index >= edges_.size()) throw GeometryError("set index out of range");
  edges_[index] = e;
}

std::size_t EdgeSequence::substitute(const EdgeSequence& old_part, const EdgeSequence& new_part) {
  if (old_part.empty()) throw GeometryError("substitute target is empty");
  auto it = std::search(edges_.begin(), edges_.end(), old_part.edges_.begin(), old_part.edges_.end());
  if (it == edges_.end()) throw GeometryError("substitute target not found in sequence");
  const auto at = static_cast<std::size_t>(it - edges_.begin());
  edges_.erase(it, it + static_cast<std::ptrdiff_t>(old_part.size()));
  edges_.insert(edges_.begin() + static_cast<std::ptrdiff_t>(at), new_part.edges_.begin(),
                new_part.edges_.end());
  return at;
}

bool EdgeSequence::is_chained() const {
  if (edges_.empty()) return false;
  for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
    if (distance(edges_[i].end(), edges_[i + 1].start()) > kChainTolerance) return false;
  }
  return true;
}

bool EdgeSequence::is_loop() const {
  return is_chained() && distance(edges_.back().end(), edges_.front().start()) <= kChainTolerance;
}

std::vector<Point2> EdgeSequence::vertices() const {
  std::vector<Point2> out;
  if (edges_.empty()) return out;
  out.push_back(edges_.front().start());
  for (const Edge& e : edges_) out.push_back(e.end());
  if (is_loop()) out.pop_back();
  return out;
}

double EdgeSequence::length() const {
  double sum = 0.0;
  for (const Edge& e : edges_) sum += e.length();
  return sum;
}

Point2 EdgeSequence::opening() const {
  if (edges_.empty()) throw GeometryError("empty sequence has no opening");
  return edges_.back().end() - edges_.front().start();
}

EdgeSequence EdgeSequence::reversed() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (auto it = edges_.rbegin(); it != edges_.rend(); ++it) out.push_back(it->reversed());
  return EdgeSequence(std::move(out));
}

EdgeSequence EdgeSequence::translated(Point2 offset) const {
  return map([&](const Edge& e) { return e.translated(offset); });
}

EdgeSequence EdgeSequence::rotated(double radians, Point2 pivot) const {
  return map([&](const Edge& e) { return e.rotated(radians, pivot); });
}

EdgeSequence EdgeSequence::scaled(double factor, Point2 pivot) const {
  return map([&](const Edge& e) { return e.scaled(factor, pivot); });
}

EdgeSequence EdgeSequence::reflected(Point2 on_axis, Point2 dir) const {
  if (!(norm(dir) > 0.0)) throw GeometryError("reflection axis direction has zero length");
  return map([&](const Edge& e) { return e.reflected(on_axis, dir); });
}

void EdgeSequence::snap_chain() {
  for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
    edges_[i + 1] = edges_[i + 1].with_endpoints(edges_[i].end(), edges_[i + 1].end());
  }
}

}  // namespace seamkit
