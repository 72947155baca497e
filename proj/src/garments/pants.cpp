#include <cmath>
#include <numbers>

#include "seamkit/error.hpp"
#include "seamkit/garments.hpp"

namespace seamkit::garments {

DesignTemplate pants_design() {
  DesignTemplate t;
  t.number("length_frac", 0.9, "(body.hips_line + 25) / body.waist_level", "0.97",
           "Outseam length as a fraction of the waist height");
  t.number("rise_extra", 7.0, "4", "12", "Crotch depth below the hip line, cm");
  t.number("hip_ease", 2.0, "0", "6", "Extra hip girth, cm");
  t.number("hem_frac", 0.8, "0.55", "1", "Hem width relative to the leg width at the crotch");
  return t;
}

namespace {

struct LegShape {
  double waist_q, hip_q, hip_drop, rise, ext, length, hem_frac;
};

// One leg panel with the centre seam at x = 0 and the crotch extending to
// -x. Edges: 0 centre seam, 1 crotch curve, 2 inseam, 3 hem, 4 outseam
// below the hip, 5 hip curve, 6 waist.
EdgeSequence leg_panel(const LegShape& s) {
  const Point2 wc{0.0, 0.0};
  const Point2 ch{0.0, -s.hip_drop};
  const Point2 ct{-s.ext, -s.rise};
  const double width = s.hip_q + s.ext;
  const double centre = (s.hip_q - s.ext) / 2;
  const double hem = width * s.hem_frac;
  const Point2 hem_in{centre - hem / 2, -s.length};
  const Point2 hem_out{centre + hem / 2, -s.length};
  const Point2 hp{s.hip_q, -s.hip_drop};
  const Point2 ws{s.waist_q, 0.0};
  // Crotch scooped towards the corner below the hip line, hip bulging out.
  const Point2 crotch_apex = lerp(lerp(ch, ct, 0.5), Point2{0.0, -s.rise}, 0.45);
  const Point2 d = normalized(ws - hp);
  const Point2 hip_apex = lerp(hp, ws, 0.5) + Point2{d.y, -d.x} * 0.6;
  return EdgeSequence{Edge::line(wc, ch),        quad_with_apex(ch, ct, crotch_apex), Edge::line(ct, hem_in),
                      Edge::line(hem_in, hem_out), Edge::line(hem_out, hp),             quad_with_apex(hp, ws, hip_apex),
                      Edge::line(ws, wc)};
}

Placement at(const Vec3& t, double yaw_deg) {
  Placement p;
  p.rotation = Quat(Eigen::AngleAxisd(deg2rad(yaw_deg), Vec3::UnitY()));
  p.translation = t;
  return p;
}

}  // namespace

std::unique_ptr<Component> pants(const BodyParams& b, const ResolvedDesign& d) {
  const double hips = b["hips"] + d.num("hip_ease");
  LegShape front{b["waist"] / 4,
                 std::max(hips, b["waist"]) / 4,
                 b["hips_line"],
                 b["hips_line"] + d.num("rise_extra"),
                 hips / 16,
                 d.num("length_frac") * b["waist_level"],
                 d.num("hem_frac")};
  if (front.length < front.rise + 10.0) throw GeometryError("pants shorter than the crotch depth", "pants");
  LegShape back = front;
  back.ext = hips / 10;

  auto right = std::make_unique<Component>("right");
  Panel& f = right->add(std::make_unique<Panel>("front", leg_panel(front)));
  Panel& k = right->add(std::make_unique<Panel>("back", leg_panel(back)));
  // The back is drawn as the mirror image so both panels run the same way
  // round the leg.
  k.transform_geometry([](const EdgeSequence& s) { return s.reflected({0.0, 0.0}, {0.0, 1.0}); });

  right->stitch(f.interface_of({4, 5}), k.interface_of({4, 5}));
  right->stitch(f.interface_of({2}), k.interface_of({2}));
  right->set_interface("top", f.interface_of({6}, true).concat(k.interface_of({6})));
  right->set_interface("crotch_front", f.interface_of({0, 1}));
  right->set_interface("crotch_back", k.interface_of({0, 1}));

  const double depth = hips / (2.0 * std::numbers::pi);
  f.set_placement(at({0.0, b["waist_level"], depth}, 0.0));
  k.set_placement(at({0.0, b["waist_level"], -depth}, 180.0));

  auto out = std::make_unique<Component>("pants");
  Component& r = out->add(std::move(right));
  Component& l = out->add(mirror(r, 0.0, "left"));
  out->stitch(r.interface("crotch_front"), l.interface("crotch_front"));
  out->stitch(r.interface("crotch_back"), l.interface("crotch_back"));
  out->set_interface("top", r.interface("top").concat(l.interface("top").reversed()));
  return out;
}

}  // namespace seamkit::garments
