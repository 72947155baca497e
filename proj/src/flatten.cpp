#include "seamkit/flatten.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "seamkit/error.hpp"

namespace seamkit {

namespace {

struct Measured {
  std::vector<ResolvedEntry> entries;
  std::vector<double> cum;  // cum[0] = 0, cum.back() = 1
};

Measured measure(const Interface& i) {
  Measured m;
  m.entries = i.resolve();
  if (m.entries.empty()) throw ValidationError("stitch interface resolves to no edges");
  std::vector<double> lengths;
  double total = 0.0;
  for (const ResolvedEntry& r : m.entries) {
    lengths.push_back(r.panel->edge_at(r.index).length());
    total += lengths.back();
  }
  m.cum.push_back(0.0);
  double run = 0.0;
  for (std::size_t k = 0; k + 1 < lengths.size(); ++k) {
    run += lengths[k];
    m.cum.push_back(run / total);
  }
  m.cum.push_back(1.0);
  return m;
}

std::vector<double> internal(const Measured& m) { return {m.cum.begin() + 1, m.cum.end() - 1}; }

// Adds a vertex at interface fraction f by splitting the containing edge.
void insert_vertex(const Interface& side, double f) {
  const Measured m = measure(side);
  for (std::size_t j = 0; j + 1 < m.cum.size(); ++j) {
    if (f > m.cum[j] && f < m.cum[j + 1]) {
      const double g = (f - m.cum[j]) / (m.cum[j + 1] - m.cum[j]);
      const ResolvedEntry& r = m.entries[j];
      const double local[] = {r.traversal_reversed ? 1.0 - g : g};
      r.panel->subdivide(r.edge, local);
      return;
    }
  }
  throw GeometryError("fraction " + std::to_string(f) + " does not fall inside an interface edge");
}

void claim(const std::vector<ResolvedEntry>& entries, ClaimSet& local, const ClaimSet* claimed) {
  for (const ResolvedEntry& r : entries) {
    const auto key = std::make_pair(static_cast<const Panel*>(r.panel), r.edge);
    if ((claimed && claimed->count(key)) || !local.insert(key).second) {
      throw ValidationError("edge " + std::to_string(r.index) + " of panel '" + r.panel->path() +
                            "' is already claimed by another stitch");
    }
  }
}

}  // namespace

std::vector<double> interface_fractions(const Interface& i) { return internal(measure(i)); }

std::vector<EdgePair> flatten_stitch(const StitchingRule& rule, double tolerance, ClaimSet* claimed) {
  if (rule.a.empty() || rule.b.empty()) throw ValidationError("stitching rule with an empty interface");
  {
    ClaimSet local;
    claim(rule.a.resolve(), local, claimed);
    claim(rule.b.resolve(), local, claimed);
  }

  const std::vector<double> fa = interface_fractions(rule.a);
  const std::vector<double> fb = interface_fractions(rule.b);
  std::vector<bool> b_matched(fb.size(), false);

  // A -> B: every A vertex gets a partner on B, reusing the nearest free
  // B vertex within tolerance.
  std::vector<double> add_to_b;
  for (double f : fa) {
    int best = -1;
    for (std::size_t k = 0; k < fb.size(); ++k) {
      if (b_matched[k] || std::abs(fb[k] - f) > tolerance) continue;
      if (best < 0 || std::abs(fb[k] - f) < std::abs(fb[best] - f)) best = static_cast<int>(k);
    }
    if (best >= 0) {
      b_matched[best] = true;
    } else {
      add_to_b.push_back(f);
    }
  }
  // B -> A: unmatched B vertices are copied onto A.
  std::vector<double> add_to_a;
  for (std::size_t k = 0; k < fb.size(); ++k) {
    if (!b_matched[k]) add_to_a.push_back(fb[k]);
  }
  for (double f : add_to_b) insert_vertex(rule.b, f);
  for (double f : add_to_a) insert_vertex(rule.a, f);

  const std::vector<ResolvedEntry> ra = rule.a.resolve();
  const std::vector<ResolvedEntry> rb = rule.b.resolve();
  if (ra.size() != rb.size()) throw GeometryError("fraction matching left unequal edge counts");
  std::vector<EdgePair> out;
  for (std::size_t k = 0; k < ra.size(); ++k) {
    out.push_back({{ra[k].panel, ra[k].edge, ra[k].reverse}, {rb[k].panel, rb[k].edge, rb[k].reverse}});
    if (claimed) {
      claimed->insert({ra[k].panel, ra[k].edge});
      claimed->insert({rb[k].panel, rb[k].edge});
    }
  }
  return out;
}

namespace {

void flatten_all(Component& c, double tolerance, ClaimSet& claimed, std::vector<EdgePair>& pairs) {
  for (const auto& child : c.children()) flatten_all(*child, tolerance, claimed, pairs);
  for (std::size_t k = 0; k < c.stitches().size(); ++k) {
    try {
      std::vector<EdgePair> got = flatten_stitch(c.stitches()[k], tolerance, &claimed);
      pairs.insert(pairs.end(), got.begin(), got.end());
    } catch (Error& e) {
      if (e.path().empty()) e.set_path(c.path() + ".stitch[" + std::to_string(k) + "]");
      throw;
    }
  }
}

FlatCurvature curvature_of(const Edge& e) {
  return std::visit(
      [](const auto& s) -> FlatCurvature {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ArcShape>) {
          return {"circle", {s.rel_sagitta}};
        } else if constexpr (std::is_same_v<S, QuadShape>) {
          return {"quadratic", {s.control.u, s.control.v}};
        } else if constexpr (std::is_same_v<S, CubicShape>) {
          return {"cubic", {s.c1.u, s.c1.v, s.c2.u, s.c2.v}};
        } else {
          return {};
        }
      },
      e.shape());
}

FlatStitchSide side_of(const EdgeRef& r) {
  const std::size_t index = r.panel->index_of(r.edge);
  return {r.panel->path(), static_cast<int>(index), r.reverse != r.panel->flipped(r.edge)};
}

}  // namespace

FlatPattern serialize(const Component& root, const SerializeOptions& options) {
  std::unique_ptr<Component> work = root.clone();
  work->set_auto_orient(false);
  validate(*work);
  for (Panel* p : work->collect_panels()) p->orient_normal(options.body_center);

  ClaimSet claimed;
  std::vector<EdgePair> pairs;
  flatten_all(*work, options.fraction_tolerance, claimed, pairs);

  FlatPattern out;
  for (const Panel* p : work->collect_panels()) {
    FlatPanel fp;
    const int n = static_cast<int>(p->size());
    for (int i = 0; i < n; ++i) {
      const Edge& e = p->edge_at(static_cast<std::size_t>(i));
      fp.vertices.push_back(e.start());
      FlatEdge fe;
      fe.endpoints = {i, (i + 1) % n};
      if (e.is_curved()) fe.curvature = curvature_of(e);
      fp.edges.push_back(fe);
    }
    const Placement w = p->world_placement();
    fp.translation = {w.translation.x(), w.translation.y(), w.translation.z()};
    fp.rotation = w.euler_deg();
    if (!out.panels.emplace(p->path(), std::move(fp)).second) {
      throw ValidationError("two panels share the path '" + p->path() + "'", p->path());
    }
  }
  for (const EdgePair& pr : pairs) out.stitches.push_back({side_of(pr.first), side_of(pr.second)});
  return out;
}

EdgeSequence panel_edges(const FlatPanel& p) {
  std::vector<Edge> edges;
  for (const FlatEdge& fe : p.edges) {
    const Point2 a = p.vertices.at(static_cast<std::size_t>(fe.endpoints[0]));
    const Point2 b = p.vertices.at(static_cast<std::size_t>(fe.endpoints[1]));
    if (!fe.curvature) {
      edges.push_back(Edge::line(a, b));
      continue;
    }
    const FlatCurvature& c = *fe.curvature;
    if (c.type == "circle") {
      edges.push_back(Edge::arc(a, b, c.params.at(0)));
    } else if (c.type == "quadratic") {
      edges.push_back(Edge::quadratic(a, b, {c.params.at(0), c.params.at(1)}));
    } else if (c.type == "cubic") {
      edges.push_back(Edge::cubic(a, b, {c.params.at(0), c.params.at(1)}, {c.params.at(2), c.params.at(3)}));
    } else {
      throw FormatError("unknown curvature type '" + c.type + "'");
    }
  }
  return EdgeSequence(std::move(edges));
}

// ---- JSON -----------------------------------------------------------------

Json to_json(const FlatPattern& p) {
  Json panels = Json::object();
  for (const auto& [name, fp] : p.panels) {
    Json verts = Json::array();
    for (Point2 v : fp.vertices) verts.push_back(Json::array({v.x, v.y}));
    Json edges = Json::array();
    for (const FlatEdge& fe : fp.edges) {
      Json e = {{"endpoints", Json::array({fe.endpoints[0], fe.endpoints[1]})}};
      if (fe.curvature) {
        const FlatCurvature& c = *fe.curvature;
        Json params = Json::array();
        if (c.type == "circle") {
          params.push_back(c.params.at(0));
        } else {
          for (std::size_t k = 0; k + 1 < c.params.size(); k += 2) {
            params.push_back(Json::array({c.params[k], c.params[k + 1]}));
          }
        }
        e["curvature"] = {{"type", c.type}, {"params", params}};
      }
      edges.push_back(e);
    }
    panels[name] = {
        {"vertices", verts},
        {"edges", edges},
        {"translation", Json::array({fp.translation[0], fp.translation[1], fp.translation[2]})},
        {"rotation", Json::array({fp.rotation[0], fp.rotation[1], fp.rotation[2]})},
    };
  }
  Json stitches = Json::array();
  for (const FlatStitch& s : p.stitches) {
    auto side = [](const FlatStitchSide& x) {
      return Json::array({Json{{"panel", x.panel}, {"edge", x.edge}, {"reverse", x.reverse}}});
    };
    stitches.push_back(Json::array({side(s.a), side(s.b)}));
  }
  return {
      {"pattern", {{"panels", panels}, {"stitches", stitches}}},
      {"properties", {{"units_in_meter", p.units_in_meter}, {"curvature_coords", p.curvature_coords}}},
  };
}

namespace {

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + " must be an object", where);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; });
    if (!ok) throw FormatError("unknown field '" + it.key() + "' in " + where, where + "." + it.key());
  }
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw FormatError("missing field '" + std::string(key) + "' in " + where, where + "." + key);
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw FormatError(where + " must be a number", where);
  return j.get<double>();
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw FormatError(where + " must be an integer", where);
  return j.get<int>();
}

std::array<double, 3> triple(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw FormatError(where + " must be an array of 3 numbers", where);
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]"), number(j[2], where + "[2]")};
}

FlatStitchSide stitch_side(const Json& j, const std::string& where, const FlatPattern& p) {
  if (!j.is_array() || j.size() != 1) throw FormatError(where + " must hold exactly one edge", where);
  const Json& o = j[0];
  const std::string w = where + "[0]";
  only_keys(o, {"panel", "edge", "reverse"}, w);
  FlatStitchSide s;
  const Json& name = need(o, "panel", w);
  if (!name.is_string()) throw FormatError(w + ".panel must be a string", w + ".panel");
  s.panel = name.get<std::string>();
  s.edge = integer(need(o, "edge", w), w + ".edge");
  if (auto it = o.find("reverse"); it != o.end()) {
    if (!it->is_boolean()) throw FormatError(w + ".reverse must be a boolean", w + ".reverse");
    s.reverse = it->get<bool>();
  }
  auto panel = p.panels.find(s.panel);
  if (panel == p.panels.end()) throw FormatError("stitch references unknown panel '" + s.panel + "'", w + ".panel");
  if (s.edge < 0 || s.edge >= static_cast<int>(panel->second.edges.size())) {
    throw FormatError("stitch references missing edge " + std::to_string(s.edge), w + ".edge");
  }
  return s;
}

}  // namespace

FlatPattern from_json(const Json& j) {
  only_keys(j, {"pattern", "properties"}, "root");
  FlatPattern out;
  const Json& props = need(j, "properties", "root");
  only_keys(props, {"units_in_meter", "curvature_coords"}, "properties");
  out.units_in_meter = integer(need(props, "units_in_meter", "properties"), "properties.units_in_meter");
  const Json& coords = need(props, "curvature_coords", "properties");
  if (coords != "relative") throw FormatError("only relative curvature coordinates are supported", "properties.curvature_coords");
  out.curvature_coords = "relative";

  const Json& pat = need(j, "pattern", "root");
  only_keys(pat, {"panels", "stitches"}, "pattern");
  const Json& panels = need(pat, "panels", "pattern");
  if (!panels.is_object()) throw FormatError("pattern.panels must be an object", "pattern.panels");
  for (auto it = panels.begin(); it != panels.end(); ++it) {
    const std::string w = "pattern.panels." + it.key();
    only_keys(*it, {"vertices", "edges", "translation", "rotation"}, w);
    FlatPanel fp;
    const Json& verts = need(*it, "vertices", w);
    if (!verts.is_array()) throw FormatError(w + ".vertices must be an array", w + ".vertices");
    for (std::size_t k = 0; k < verts.size(); ++k) {
      const std::string wv = w + ".vertices[" + std::to_string(k) + "]";
      if (!verts[k].is_array() || verts[k].size() != 2) throw FormatError(wv + " must be [x, y]", wv);
      fp.vertices.push_back({number(verts[k][0], wv), number(verts[k][1], wv)});
    }
    const Json& edges = need(*it, "edges", w);
    if (!edges.is_array()) throw FormatError(w + ".edges must be an array", w + ".edges");
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const std::string we = w + ".edges[" + std::to_string(k) + "]";
      only_keys(edges[k], {"endpoints", "curvature"}, we);
      FlatEdge fe;
      const Json& ends = need(edges[k], "endpoints", we);
      if (!ends.is_array() || ends.size() != 2) throw FormatError(we + ".endpoints must be [i, j]", we + ".endpoints");
      for (int s = 0; s < 2; ++s) {
        fe.endpoints[s] = integer(ends[s], we + ".endpoints");
        if (fe.endpoints[s] < 0 || fe.endpoints[s] >= static_cast<int>(fp.vertices.size())) {
          throw FormatError(we + ".endpoints index out of range", we + ".endpoints");
        }
      }
      if (auto c = edges[k].find("curvature"); c != edges[k].end()) {
        const std::string wc = we + ".curvature";
        only_keys(*c, {"type", "params"}, wc);
        FlatCurvature fc;
        const Json& type = need(*c, "type", wc);
        if (!type.is_string()) throw FormatError(wc + ".type must be a string", wc + ".type");
        fc.type = type.get<std::string>();
        const Json& params = need(*c, "params", wc);
        if (!params.is_array()) throw FormatError(wc + ".params must be an array", wc + ".params");
        std::size_t expected = 0;
        if (fc.type == "circle") {
          expected = 1;
          if (params.size() != 1) throw FormatError(wc + ".params must hold one sagitta", wc + ".params");
          fc.params.push_back(number(params[0], wc + ".params[0]"));
        } else if (fc.type == "quadratic" || fc.type == "cubic") {
          expected = fc.type == "quadratic" ? 1 : 2;
          if (params.size() != expected) throw FormatError(wc + ".params has the wrong number of controls", wc + ".params");
          for (const Json& q : params) {
            if (!q.is_array() || q.size() != 2) throw FormatError(wc + ".params entries must be [u, v]", wc + ".params");
            fc.params.push_back(number(q[0], wc + ".params"));
            fc.params.push_back(number(q[1], wc + ".params"));
          }
        } else {
          throw FormatError("unknown curvature type '" + fc.type + "'", wc + ".type");
        }
        fe.curvature = std::move(fc);
      }
      fp.edges.push_back(std::move(fe));
    }
    fp.translation = triple(need(*it, "translation", w), w + ".translation");
    fp.rotation = triple(need(*it, "rotation", w), w + ".rotation");
    out.panels.emplace(it.key(), std::move(fp));
  }
  const Json& stitches = need(pat, "stitches", "pattern");
  if (!stitches.is_array()) throw FormatError("pattern.stitches must be an array", "pattern.stitches");
  for (std::size_t k = 0; k < stitches.size(); ++k) {
    const std::string w = "pattern.stitches[" + std::to_string(k) + "]";
    if (!stitches[k].is_array() || stitches[k].size() != 2) throw FormatError(w + " must have two sides", w);
    out.stitches.push_back({stitch_side(stitches[k][0], w + "[0]", out), stitch_side(stitches[k][1], w + "[1]", out)});
  }
  return out;
}

std::string pattern_to_string(const FlatPattern& p) { return dump_stable(to_json(p)); }

FlatPattern pattern_from_string(const std::string& text, const std::string& origin) {
  return from_json(parse_json(text, origin));
}

void write_pattern(const FlatPattern& p, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path, path);
  out << pattern_to_string(p);
}

FlatPattern read_pattern(const std::string& path) { return from_json(read_json_file(path)); }

}  // namespace seamkit
