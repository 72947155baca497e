#include <algorithm>
#include <cmath>
#include <numbers>

#include "seamkit/error.hpp"
#include "seamkit/garments.hpp"

namespace seamkit::garments {

DesignTemplate bodice_design(bool fitted) {
  DesignTemplate t;
  t.number("ease", 4.0, "0", "10", "Bust ease, cm");
  t.choice("collar", "round", {"round", "v"}, "Neckline shape");
  t.number("collar_width", 18.0, "body.neck_w", "body.shoulder_w - 6", "Neckline width, cm");
  t.number("neck_depth", 8.0, "3", "14", "Front neckline depth, cm");
  t.boolean("sleeves", true, "Attach sleeves");
  if (fitted) {
    t.number("dart_depth", 0.6, "0.3", "0.8", "Waist dart depth relative to the underarm height");
    t.number("dart_position", 0.5, "0.35", "0.65", "Waist dart position from the centre line");
  }
  t.merge_prefixed(sleeve_design(), "sleeve");
  return t;
}

namespace {

// Block of one body half. Front frame: centre front on x = 0, side seam at
// +x. The back is drawn towards -x with the centre back on x = 0.
struct Frame {
  double width;        // half-panel width at the underarm
  double waist_w;      // bottom width, darts included
  double dart;         // waist dart width, 0 when straight
  double bust_lift;    // extra front length over the bust
  double centre_h;     // centre height above the waist
  double corner_h;     // height of the shoulder corner
  double underarm_y;   // underarm height above the waist
  double shoulder_x;   // shoulder point, distance from the centre
  double neck_x;       // half neckline width

  // Point on the side seam at height y.
  double side_x(double y, double lift) const {
    return waist_w + (width - waist_w) * y / (corner_h + lift);
  }
  // Height of the top edge at distance x from the centre.
  double top_y(double x, double lift) const {
    return corner_h + lift + (centre_h - corner_h) * (width - x) / width;
  }
};

Frame make_frame(const BodyParams& b, double ease, double collar_width, double opening_depth, bool fitted) {
  Frame f{};
  f.width = std::max({(b["bust"] + ease) / 4, b["waist"] / 4, b["shoulder_w"] / 2 + 3.0});
  // Waist darts take up the bust-waist difference; ease goes into the side seam.
  f.dart = fitted ? std::max(0.0, (b["bust"] - b["waist"]) / 4) : 0.0;
  f.waist_w = b["waist"] / 4 + f.dart;
  f.bust_lift = fitted ? std::max(0.0, (b["bust"] - b["waist"]) / 10) : 0.0;
  f.centre_h = b["waist_line"];
  f.corner_h = f.centre_h - 4.0;
  f.underarm_y = f.corner_h - (b["bust_line"] - 4.0) * opening_depth;
  f.shoulder_x = b["shoulder_w"] / 2;
  f.neck_x = collar_width / 2;
  if (f.underarm_y < 5.0) throw GeometryError("armhole deeper than the bodice", "bodice");
  if (f.neck_x > f.shoulder_x - 2.0) throw GeometryError("neckline wider than the shoulders", "bodice");
  return f;
}

// Armhole curves from the shoulder point down to the underarm.
Edge front_armhole(const Frame& f) {
  const Point2 s{f.shoulder_x, f.top_y(f.shoulder_x, f.bust_lift)};
  const double uy = f.underarm_y + f.bust_lift;
  const Point2 u{f.side_x(uy, f.bust_lift), uy};
  const Edge probe = Edge::line(s, u);
  return Edge::cubic(s, u, probe.to_relative(s + Point2{0.0, -0.55 * (s.y - u.y)}),
                     probe.to_relative(u + Point2{-0.55 * (u.x - s.x), 0.0}));
}

// In the back frame (x < 0).
Edge back_armhole(const Frame& f) {
  const Point2 s{-f.shoulder_x, f.top_y(f.shoulder_x, 0.0)};
  const Point2 u{-f.side_x(f.underarm_y, 0.0), f.underarm_y};
  const Edge probe = Edge::line(s, u);
  return Edge::cubic(s, u, probe.to_relative(s + Point2{0.0, -0.45 * (s.y - u.y)}),
                     probe.to_relative(u + Point2{0.45 * (s.x - u.x), 0.0}));
}

Edge neckline(Point2 from, Point2 to, const std::string& collar) {
  return collar == "v" ? Edge::line(from, to) : Edge::arc(from, to, -0.25);
}

Placement at(const Vec3& t, double yaw_deg) {
  Placement p;
  p.rotation = Quat(Eigen::AngleAxisd(deg2rad(yaw_deg), Vec3::UnitY()));
  p.translation = t;
  return p;
}

double total_length(const Panel& p, EdgeId id) {
  double l = 0.0;
  for (EdgeId piece : p.pieces(id)) l += p.edge(piece).length();
  return l;
}

void close_dart(Panel& p, const std::vector<EdgeId>& legs) {
  p.add_internal_stitch(p.interface_of({legs[0]}), p.interface_of({legs[1]}, true));
}

}  // namespace

Armhole default_armhole(const BodyParams& b, double opening_depth) {
  const Frame f = make_frame(b, 4.0, b["neck_w"], opening_depth, false);
  Armhole a;
  a.front = front_armhole(f);
  a.back = back_armhole(f).reflected({0.0, 0.0}, {0.0, 1.0});
  a.anchor = Vec3(a.front.start().x, b["waist_level"] + a.front.start().y, 0.0);
  return a;
}

std::unique_ptr<Component> bodice(const BodyParams& b, const ResolvedDesign& d, bool fitted) {
  const std::string name = fitted ? "fitted_bodice" : "straight_bodice";
  const ResolvedDesign sd = d.sub("sleeve");
  const Frame f = make_frame(b, d.num("ease"), d.num("collar_width"), sd.num("opening_depth"), fitted);
  const std::string collar = d.choice("collar");
  const double lift = f.bust_lift;

  auto right = std::make_unique<Component>("right");

  // Front edges: 0 waist, 1 side, 2 shoulder, 3 centre front.
  Panel& fr = right->add(std::make_unique<Panel>(
      "front", EdgeSequence::from_verts(
                   {{0.0, 0.0}, {f.waist_w, 0.0}, {f.width, f.corner_h + lift}, {0.0, f.centre_h + lift}}, true)));
  const Edge f_arm = front_armhole(f);
  const EdgeId f_arm_id = fr.project_on_corner(1, EdgeSequence{f_arm}, 0.0).at(0);
  {
    const Point2 dn{0.0, f.centre_h + lift - d.num("neck_depth")};
    const Point2 nk{f.neck_x, f.top_y(f.neck_x, lift)};
    fr.project_on_corner(fr.pieces(2).at(0), EdgeSequence{neckline(dn, nk, collar)}, 0.0);
  }

  // Back edges: 0 waist, 1 centre back, 2 shoulder, 3 side.
  Panel& bk = right->add(std::make_unique<Panel>(
      "back", EdgeSequence::from_verts({{-f.waist_w, 0.0}, {0.0, 0.0}, {0.0, f.centre_h}, {-f.width, f.corner_h}}, true)));
  {
    const Point2 nk{-f.neck_x, f.top_y(f.neck_x, 0.0)};
    const Point2 dn{0.0, f.centre_h - 2.0};
    bk.project_on_corner(1, EdgeSequence{neckline(nk, dn, collar)}, 0.0);
  }
  const Edge b_arm = back_armhole(f);
  const EdgeId b_arm_id = bk.project_on_corner(bk.pieces(2).at(0), EdgeSequence{b_arm.reversed()}, 0.0).at(0);

  if (fitted) {
    // The bust lift makes the front side longer; a side dart takes it up.
    const double excess = total_length(fr, 1) - total_length(bk, 3);
    if (excess > 1e-6) {
      if (excess > 0.45 * total_length(fr, 1)) throw GeometryError("side dart wider than the side seam", name);
      const EdgeId side = fr.pieces(1).at(0);
      close_dart(fr, fr.project_on_edge(side, EdgeSequence::dart_shape(excess, std::min(0.5 * f.width, 9.0)), 0.55,
                                        true));
    }
    const double depth = d.num("dart_depth") * f.underarm_y;
    const double pos = d.num("dart_position");
    if (f.dart > 1e-6) {
      close_dart(fr, fr.project_on_edge(0, EdgeSequence::dart_shape(f.dart, depth), pos, true));
      close_dart(bk, bk.project_on_edge(0, EdgeSequence::dart_shape(f.dart, depth), 1.0 - pos, true));
    }
  }

  right->stitch(fr.interface_of({1}), bk.interface_of({3}, true));
  right->stitch(fr.interface_of({2}), bk.interface_of({2}, true));
  right->set_interface("bottom", fr.interface_of({0}).concat(bk.interface_of({0})));
  right->set_interface("center_front", fr.interface_of({3}));
  right->set_interface("center_back", bk.interface_of({1}));
  // Over the shoulder from the back underarm.
  const Interface armhole = bk.interface_of({b_arm_id}, true).concat(fr.interface_of({f_arm_id}, true));

  const double depth = (b["bust"] + d.num("ease")) / (2.0 * std::numbers::pi);
  fr.set_placement(at({0.0, b["waist_level"], depth}, 0.0));
  bk.set_placement(at({0.0, b["waist_level"], -depth}, 180.0));

  if (d.flag("sleeves")) {
    Armhole a;
    a.front = f_arm;
    a.back = b_arm.reflected({0.0, 0.0}, {0.0, 1.0});
    a.anchor = Vec3(f_arm.start().x, b["waist_level"] + f_arm.start().y, 0.0);
    Component& s = right->add(sleeve(b, sd, a, "sleeve"));
    right->stitch(armhole, s.interface("armhole"));
  } else {
    right->set_interface("armhole", armhole);
  }

  auto out = std::make_unique<Component>(name);
  Component& r = out->add(std::move(right));
  Component& l = out->add(mirror(r, 0.0, "left"));
  out->stitch(r.interface("center_front"), l.interface("center_front"));
  out->stitch(r.interface("center_back"), l.interface("center_back"));
  out->set_interface("bottom", r.interface("bottom").concat(l.interface("bottom").reversed()));
  return out;
}

}  // namespace seamkit::garments
