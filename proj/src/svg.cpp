#include "seamkit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace seamkit {

namespace {

const char* const kPalette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4",
                                "#f032e6", "#9a6324", "#469990", "#808000", "#000075", "#bfef45"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::abs(v) < 5e-4 ? 0.0 : v);
  return buf;
}

struct Box {
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity();
  double x1 = -std::numeric_limits<double>::infinity();
  double y1 = -std::numeric_limits<double>::infinity();
  void add(Point2 p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
};

Box bounds(const EdgeSequence& s) {
  Box b;
  for (const Edge& e : s) {
    b.add(e.start());
    for (Point2 p : e.extremal_points()) b.add(p);
  }
  return b;
}

// Path data for one edge, continuing from its start. `map` takes pattern
// coordinates to the page.
template <class Map>
std::string segment(const Edge& e, const Map& map, double scale) {
  std::ostringstream out;
  const auto pt = [&](Point2 p) {
    const Point2 q = map(p);
    return num(q.x) + "," + num(q.y);
  };
  switch (e.kind()) {
    case EdgeKind::line: out << "L" << pt(e.end()); break;
    case EdgeKind::arc: {
      const double r = e.arc_radius() * scale;
      // With y flipped the page looks like the pattern, and the SVG sweep
      // flag 1 means clockwise on the page.
      const int sweep = e.arc_sweep() < 0.0 ? 1 : 0;
      const int large = std::abs(e.arc_sweep()) > std::numbers::pi ? 1 : 0;
      out << "A" << num(r) << "," << num(r) << " 0 " << large << "," << sweep << " " << pt(e.end());
      break;
    }
    case EdgeKind::quadratic: out << "Q" << pt(e.absolute_controls()[0]) << " " << pt(e.end()); break;
    case EdgeKind::cubic: {
      const std::vector<Point2> c = e.absolute_controls();
      out << "C" << pt(c[0]) << " " << pt(c[1]) << " " << pt(e.end());
      break;
    }
  }
  return out.str();
}

}  // namespace

std::string render_svg(const FlatPattern& p, const SvgOptions& o) {
  std::map<std::string, EdgeSequence> loops;
  std::map<std::string, Box> boxes;
  double cell_w = 0.0;
  double cell_h = 0.0;
  for (const auto& [name, panel] : p.panels) {
    loops.emplace(name, panel_edges(panel));
    const Box b = bounds(loops.at(name));
    boxes.emplace(name, b);
    cell_w = std::max(cell_w, b.x1 - b.x0);
    cell_h = std::max(cell_h, b.y1 - b.y0);
  }
  cell_w += 2 * o.margin_cm;
  cell_h += 2 * o.margin_cm;
  const int cols = std::max(1, std::min(o.columns, static_cast<int>(p.panels.size())));
  const int rows = std::max(1, static_cast<int>((p.panels.size() + cols - 1) / cols));
  const double s = o.px_per_cm;

  // Colour of each stitched edge.
  std::map<std::pair<std::string, int>, std::string> seam_colour;
  for (std::size_t i = 0; i < p.stitches.size(); ++i) {
    const char* c = kPalette[i % std::size(kPalette)];
    seam_colour[{p.stitches[i].a.panel, p.stitches[i].a.edge}] = c;
    seam_colour[{p.stitches[i].b.panel, p.stitches[i].b.edge}] = c;
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(cols * cell_w * s) << "\" height=\""
      << num(rows * cell_h * s) << "\" viewBox=\"0 0 " << num(cols * cell_w * s) << " " << num(rows * cell_h * s)
      << "\">\n";
  int k = 0;
  for (const auto& [name, loop] : loops) {
    const Box& b = boxes.at(name);
    const double ox = (k % cols) * cell_w + o.margin_cm - b.x0;
    const double oy = (k / cols) * cell_h + o.margin_cm + b.y1;
    ++k;
    const auto map = [&](Point2 q) { return Point2{(q.x + ox) * s, (oy - q.y) * s}; };
    const auto at = [&](Point2 q) {
      const Point2 m = map(q);
      return num(m.x) + "," + num(m.y);
    };

    svg << "<g class=\"panel\" id=\"" << name << "\">\n<path d=\"M" << at(loop[0].start());
    // Z draws a straight closing edge.
    const std::size_t drawn = loop.back().kind() == EdgeKind::line ? loop.size() - 1 : loop.size();
    for (std::size_t i = 0; i < drawn; ++i) svg << " " << segment(loop[i], map, s);
    svg << " Z\" fill=\"#f4f1ea\" stroke=\"#222\" stroke-width=\"1\"/>\n";
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const auto it = seam_colour.find({name, static_cast<int>(i)});
      if (it == seam_colour.end()) continue;
      svg << "<path d=\"M" << at(loop[i].start()) << " " << segment(loop[i], map, s) << "\" fill=\"none\" stroke=\""
          << it->second << "\" stroke-width=\"2.5\"/>\n";
    }
    const Point2 label = map({(b.x0 + b.x1) / 2, (b.y0 + b.y1) / 2});
    svg << "<text x=\"" << num(label.x) << "\" y=\"" << num(label.y)
        << "\" font-size=\"7\" text-anchor=\"middle\" font-family=\"sans-serif\">" << name << "</text>\n</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace seamkit
