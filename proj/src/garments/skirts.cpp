#include <cmath>
#include <numbers>

#include "seamkit/error.hpp"
#include "seamkit/garments.hpp"

namespace seamkit::garments {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Placement at(const Vec3& t, double yaw_deg = 0.0) {
  Placement p;
  p.rotation = Quat(Eigen::AngleAxisd(deg2rad(yaw_deg), Vec3::UnitY()));
  p.translation = t;
  return p;
}

// Outward-bulging hip curve from `from` up to `to`; the outside is on the
// right of the direction of travel.
Edge hip_curve(Point2 from, Point2 to, double bulge) {
  const Point2 d = normalized(to - from);
  const Point2 right{d.y, -d.x};
  return quad_with_apex(from, to, lerp(from, to, 0.5) + right * bulge);
}

}  // namespace

// ---- Flared skirt ---------------------------------------------------------

DesignTemplate skirt_many_panels_design() {
  DesignTemplate t;
  t.number("length_frac", 0.6, "0.2", "0.95", "Skirt length as a fraction of the leg length");
  t.integer("n_panels", 6, "2", "12", "Number of trapezoid panels");
  t.number("flare_suns", 0.5, "0.1", "1.5", "Hem fullness; 1 sun is a full circle");
  return t;
}

std::unique_ptr<Component> skirt_many_panels(const BodyParams& b, const ResolvedDesign& d, const SkirtFit& fit) {
  const int n = d.integer("n_panels");
  if (n < 2) throw GeometryError("a flared skirt needs at least two panels", "skirt_many_panels");
  const double length = d.num("length_frac") * b["leg_length"];
  const double radius = fit.girth / kTwoPi;
  const double top = fit.girth / n;
  const double bottom = d.num("flare_suns") * kTwoPi * (radius + length) / n;

  // Edges: 0 hem, 1 right side (up), 2 waist, 3 left side (down).
  Panel proto("panel", EdgeSequence::from_verts(
                           {{-bottom / 2, -length}, {bottom / 2, -length}, {top / 2, 0.0}, {-top / 2, 0.0}}, true));
  proto.set_interface("top", proto.interface_of({2}, true));
  proto.set_interface("bottom", proto.interface_of({0}));
  proto.set_interface("right", proto.interface_of({1}));
  proto.set_interface("left", proto.interface_of({3}, true));
  proto.set_placement(at({0.0, fit.top_y, radius}));

  // Half a panel of base rotation puts the first seam at the centre front.
  std::unique_ptr<Component> skirt = distribute_circle(proto, n, "skirt_many_panels", 180.0 / n);
  Interface top_if;
  Interface bottom_if;
  const auto& kids = skirt->children();
  for (int k = 0; k < n; ++k) {
    top_if = top_if.concat(kids[k]->interface("top"));
    bottom_if = bottom_if.concat(kids[k]->interface("bottom"));
    skirt->stitch(kids[k]->interface("right"), kids[(k + 1) % n]->interface("left"));
  }
  skirt->set_interface("top", top_if);
  skirt->set_interface("bottom", bottom_if);
  return skirt;
}

// ---- Pencil skirt ---------------------------------------------------------

DesignTemplate pencil_skirt_design() {
  DesignTemplate t;
  t.number("length_frac", 0.5, "(body.hips_line + 5) / body.leg_length", "0.95",
           "Skirt length as a fraction of the leg length");
  t.number("hip_ease", 2.0, "0", "6", "Extra hip girth, cm");
  t.number("hem_taper", 0.9, "0.75", "1", "Hem width relative to the hip width");
  return t;
}

std::unique_ptr<Component> pencil_skirt(const BodyParams& b, const ResolvedDesign& d, const SkirtFit& fit) {
  const double length = d.num("length_frac") * b["leg_length"];
  const double hip_drop = std::min(b["hips_line"], length - 3.0);
  const double top = fit.girth / 2;
  const double hip = std::max(b["hips"] + d.num("hip_ease"), fit.girth) / 2;
  const double hem = hip * d.num("hem_taper");
  const double bulge = 0.4 + 0.15 * (hip - top) / 2;

  auto skirt = std::make_unique<Component>("pencil_skirt");
  // Edges: 0 hem, 1-2 right side (line, hip curve), 3 waist, 4-5 left side.
  const auto make_panel = [&](const std::string& name) -> Panel& {
    const Point2 hem_l{-hem / 2, -length}, hem_r{hem / 2, -length};
    const Point2 hip_r{hip / 2, -hip_drop}, hip_l{-hip / 2, -hip_drop};
    const Point2 top_r{top / 2, 0.0}, top_l{-top / 2, 0.0};
    EdgeSequence loop{Edge::line(hem_l, hem_r), Edge::line(hem_r, hip_r), hip_curve(hip_r, top_r, bulge),
                      Edge::line(top_r, top_l),  hip_curve(top_l, hip_l, bulge), Edge::line(hip_l, hem_l)};
    return skirt->add(std::make_unique<Panel>(name, loop));
  };
  Panel& front = make_panel("front");
  Panel& back = make_panel("back");

  // Waist and hem interfaces start at the centre front.
  const double half[] = {0.5};
  const std::vector<EdgeId> top_pieces = front.subdivide(3, half);
  const std::vector<EdgeId> hem_pieces = front.subdivide(0, half);
  Interface top_if = front.interface_of({top_pieces[0]}, true)
                         .concat(back.interface_of({3}, true))
                         .concat(front.interface_of({top_pieces[1]}, true));
  Interface bottom_if = front.interface_of({hem_pieces[1]})
                            .concat(back.interface_of({0}))
                            .concat(front.interface_of({hem_pieces[0]}));
  skirt->stitch(front.interface_of({1, 2}), back.interface_of({5, 4}, true));
  skirt->stitch(front.interface_of({4, 5}), back.interface_of({2, 1}, true));
  skirt->set_interface("top", top_if);
  skirt->set_interface("bottom", bottom_if);

  const double depth = hip / kTwoPi * 2.0;
  front.set_placement(at({0.0, fit.top_y, depth}));
  back.set_placement(at({0.0, fit.top_y, -depth}, 180.0));
  return skirt;
}

// ---- Gathered skirt -------------------------------------------------------

DesignTemplate gather_skirt_design() {
  DesignTemplate t;
  t.number("length_frac", 0.5, "0.2", "0.95", "Skirt length as a fraction of the leg length");
  t.number("gather_ratio", 1.6, "1.2", "2.5", "Gathered width over the waistband length");
  t.integer("n_panels", 2, "2", "6", "Number of gathered panels");
  t.number("waistband_width", 4.0, "2", "8", "Waistband height, cm");
  return t;
}

std::unique_ptr<Component> gather_skirt(const BodyParams& b, const ResolvedDesign& d, const SkirtFit& fit) {
  const double band_h = d.num("waistband_width");
  const double length = d.num("length_frac") * b["leg_length"];
  const int n = d.integer("n_panels");
  const double width = d.num("gather_ratio") * fit.girth / n;

  auto skirt = std::make_unique<Component>("gather_skirt");
  Component& band = skirt->add(make_ring("waistband", {{fit.girth / 2, fit.girth / 2}, {fit.girth / 2, fit.girth / 2}},
                                         band_h, fit.top_y));
  Component& body = skirt->add(make_ring("body", std::vector<RingPiece>(n, {width, width}),
                                         std::max(length - band_h, 5.0), fit.top_y - band_h));
  place_by_interface(body, body.interface("top"), band.interface("bottom"));
  skirt->stitch(band.interface("bottom"), body.interface("top"));
  skirt->set_interface("top", band.interface("top"));
  skirt->set_interface("bottom", body.interface("bottom"));
  return skirt;
}

}  // namespace seamkit::garments
