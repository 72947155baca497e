#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "seamkit/component.hpp"
#include "seamkit/stable_json.hpp"

namespace seamkit {

/// Default fraction-matching tolerance, as a fraction of interface length.
inline constexpr double kFractionTolerance = 0.01;

/// One side of an edge-to-edge stitch before emission.
struct EdgeRef {
  Panel* panel = nullptr;
  EdgeId edge = 0;
  bool reverse = false;  // relative to the id's original direction
  bool operator==(const EdgeRef&) const = default;
  auto operator<=>(const EdgeRef&) const = default;
};

using EdgePair = std::pair<EdgeRef, EdgeRef>;
/// Edges already used by a stitch.
using ClaimSet = std::set<std::pair<const Panel*, EdgeId>>;

/// Cumulative length fractions of the internal vertices of an interface, in
/// connection order.
std::vector<double> interface_fractions(const Interface& i);

/// Subdivides edges on both sides until their internal vertices match
/// within `tolerance`, then pairs the edges in order. Edges in `claimed`
/// may not take part; the result's edges are added to it.
std::vector<EdgePair> flatten_stitch(const StitchingRule& rule, double tolerance = kFractionTolerance,
                                     ClaimSet* claimed = nullptr);

struct FlatCurvature {
  std::string type;  // "quadratic", "cubic" or "circle"
  /// quadratic: u v; cubic: u1 v1 u2 v2; circle: relative sagitta.
  std::vector<double> params;
  bool operator==(const FlatCurvature&) const = default;
};

struct FlatEdge {
  std::array<int, 2> endpoints{};
  std::optional<FlatCurvature> curvature;
  bool operator==(const FlatEdge&) const = default;
};

struct FlatPanel {
  std::vector<Point2> vertices;
  std::vector<FlatEdge> edges;
  std::array<double, 3> translation{};
  std::array<double, 3> rotation{};  // Euler degrees, x then y then z
  bool operator==(const FlatPanel&) const = default;
};

struct FlatStitchSide {
  std::string panel;
  int edge = 0;
  bool reverse = false;  // edge runs against the stitch direction
  bool operator==(const FlatStitchSide&) const = default;
};

struct FlatStitch {
  FlatStitchSide a;
  FlatStitchSide b;
  bool operator==(const FlatStitch&) const = default;
};

struct FlatPattern {
  std::map<std::string, FlatPanel> panels;
  std::vector<FlatStitch> stitches;
  int units_in_meter = 100;
  std::string curvature_coords = "relative";
  bool operator==(const FlatPattern&) const = default;
};

struct SerializeOptions {
  double fraction_tolerance = kFractionTolerance;
  /// Point the panel normals away from this point instead of the vertical axis.
  std::optional<Vec3> body_center;
};

/// Flattens every stitching rule of the hierarchy (on a private copy) and
/// emits the flat pattern. Panels are named by their component path.
FlatPattern serialize(const Component& root, const SerializeOptions& options = {});

/// Rebuilds the edge loop of a flat panel.
EdgeSequence panel_edges(const FlatPanel& p);

Json to_json(const FlatPattern& p);
FlatPattern from_json(const Json& j);
std::string pattern_to_string(const FlatPattern& p);
FlatPattern pattern_from_string(const std::string& text, const std::string& origin = "pattern");
void write_pattern(const FlatPattern& p, const std::string& path);
FlatPattern read_pattern(const std::string& path);

}  // namespace seamkit
