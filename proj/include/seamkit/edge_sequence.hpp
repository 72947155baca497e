#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "seamkit/edge.hpp"

namespace seamkit {

/// Endpoint-matching tolerance for chain and loop checks, cm.
inline constexpr double kChainTolerance = 1e-6;

/// Ordered list of edges. Nothing forces the edges to be connected; use
/// `is_chained` / `is_loop` to check.
class EdgeSequence {
 public:
  EdgeSequence() = default;
  explicit EdgeSequence(std::vector<Edge> edges) : edges_(std::move(edges)) {}
  EdgeSequence(std::initializer_list<Edge> edges) : edges_(edges) {}

  /// Straight edges through `vertices`; with `loop` a closing edge is added.
  static EdgeSequence from_verts(std::span<const Point2> vertices, bool loop);
  static EdgeSequence from_verts(std::initializer_list<Point2> vertices, bool loop) {
    return from_verts(std::span<const Point2>(vertices.begin(), vertices.size()), loop);
  }
  /// Open triangle (0,0) -> (width/2, -depth) -> (width, 0).
  static EdgeSequence dart_shape(double width, double depth);

  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  const Edge& operator[](std::size_t i) const;
  const Edge& at(std::size_t i) const { return (*this)[i]; }
  const Edge& front() const { return at(0); }
  const Edge& back() const { return at(size() - 1); }
  auto begin() const { return edges_.begin(); }
  auto end() const { return edges_.end(); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Edges [first, last).
  EdgeSequence slice(std::size_t first, std::size_t last) const;
  void append(const Edge& e) { edges_.push_back(e); }
  void append(const EdgeSequence& seq);
  void insert(std::size_t index, const Edge& e);
  void insert(std::size_t index, const EdgeSequence& seq);
  void remove(std::size_t index);
  void set(std::size_t index, const Edge& e);
  /// Replaces the first occurrence of `old_part` (as a contiguous run) by
  /// `new_part`. Returns the index where the replacement starts.
  std::size_t substitute(const EdgeSequence& old_part, const EdgeSequence& new_part);

  bool is_chained() const;
  bool is_loop() const;

  std::vector<Point2> vertices() const;
  double length() const;
  /// last end - first start.
  Point2 opening() const;

  EdgeSequence reversed() const;
  EdgeSequence translated(Point2 offset) const;
  EdgeSequence rotated(double radians, Point2 pivot = {}) const;
  EdgeSequence scaled(double factor, Point2 pivot = {}) const;
  EdgeSequence reflected(Point2 on_axis, Point2 dir) const;

  /// Moves shared endpoints so consecutive edges meet exactly (the end of
  /// edge i is copied into the start of edge i+1).
  void snap_chain();

  bool operator==(const EdgeSequence&) const = default;

 private:
  template <class F>
  EdgeSequence map(F&& f) const {
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (const Edge& e : edges_) out.push_back(f(e));
    return EdgeSequence(std::move(out));
  }

  std::vector<Edge> edges_;
};

}  // namespace seamkit
