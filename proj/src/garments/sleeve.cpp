#include <algorithm>
#include <cmath>

#include "seamkit/error.hpp"
#include "seamkit/garments.hpp"

namespace seamkit::garments {

DesignTemplate sleeve_design() {
  DesignTemplate t;
  t.number("length_frac", 0.6, "0.15", "1", "Sleeve length as a fraction of the arm length");
  t.number("rest_angle", 30.0, "0", "45", "Arm angle below horizontal at which the sleeve hangs smooth, degrees");
  t.number("opening_depth", 1.0, "0.85", "1.15", "Armhole depth scale");
  t.number("wrist_frac", 0.8, "0.5", "1", "Sleeve end width relative to the width at the armhole");
  t.boolean("cuff", false, "Add a cuff");
  t.number("cuff_length", 5.0, "2", "10", "Cuff height, cm");
  t.boolean("gather", false, "Gather the sleeve end into the cuff");
  t.number("gather_ratio", 1.4, "1.1", "2", "Sleeve end length over cuff length when gathered");
  return t;
}

namespace {

// Sleeve-side cap for one bodice armhole curve, starting at the crown.
Edge invert(const Edge& opening, double rest_angle, const std::string& path) {
  SleeveProblem p;
  p.opening = opening.translated(Point2{0.0, 0.0} - opening.start());
  p.target_length = opening.length();
  p.rest_angle_deg = rest_angle;
  p.end_tangent = {std::cos(deg2rad(rest_angle)), -std::sin(deg2rad(rest_angle))};
  const SleeveResult r = invert_sleeve_curve(p);
  if (!r.converged) {
    SolverError e("sleeve cap inversion did not converge", path);
    e.with_residual("length_error", r.length_error)
        .with_residual("start_tangent_error_deg", r.start_tangent_error)
        .with_residual("end_tangent_error_deg", r.end_tangent_error)
        .with_residual("energy", r.energy);
    throw e;
  }
  return r.curve;
}

}  // namespace

std::unique_ptr<Component> sleeve(const BodyParams& b, const ResolvedDesign& design, const Armhole& armhole,
                                  const std::string& name) {
  const double theta = design.num("rest_angle");
  const Edge cap_f = invert(armhole.front, theta, name + ".front");
  const Edge cap_b = invert(armhole.back, theta, name + ".back");
  const double length = design.num("length_frac") * b["arm_length"];
  const double end_x = std::max({length, cap_f.end().x + 5.0, cap_b.end().x + 5.0});
  const double end_w = design.num("wrist_frac") * std::min(-cap_f.end().y, -cap_b.end().y);
  if (!(end_w > 1.0)) throw GeometryError("sleeve cap too shallow", name);

  // Arm along +x, crown at the origin. Edges: 0 cap, 1 underarm seam,
  // 2 sleeve end, 3 top fold line.
  const auto half = [&](const Edge& cap) {
    const Point2 wf{end_x, -end_w};
    const Point2 wc{end_x, 0.0};
    return EdgeSequence{cap, Edge::line(cap.end(), wf), Edge::line(wf, wc), Edge::line(wc, {0.0, 0.0})};
  };
  auto s = std::make_unique<Component>(name);
  Panel& front = s->add(std::make_unique<Panel>("front", half(cap_f)));
  Panel& back = s->add(std::make_unique<Panel>("back", half(cap_b)));
  s->stitch(front.interface_of({1}), back.interface_of({1}));
  s->stitch(front.interface_of({3}), back.interface_of({3}));
  s->set_interface("armhole", back.interface_of({0}, true).concat(front.interface_of({0})));
  s->set_interface("wrist", front.interface_of({2}).concat(back.interface_of({2}, true)));

  const double zs = std::max(end_w / 2, 3.0);
  Placement pf;
  pf.translation = Vec3(0.0, 0.0, zs);
  front.set_placement(pf);
  Placement pb;
  pb.translation = Vec3(0.0, 0.0, -zs);
  back.set_placement(pb);

  if (design.flag("cuff")) {
    const double wrist = s->interface("wrist").length();
    const double cuff_len = design.flag("gather") ? wrist / design.num("gather_ratio") : wrist;
    auto ring = make_ring("cuff", {{cuff_len / 2, cuff_len / 2}, {cuff_len / 2, cuff_len / 2}}, design.num("cuff_length"), 0.0);
    Placement pc;
    pc.rotation = Quat(Eigen::AngleAxisd(deg2rad(90.0), Vec3::UnitZ()));
    ring->set_placement(pc);
    Component& cuff = s->add(std::move(ring));
    place_by_interface(cuff, cuff.interface("top"), s->interface("wrist"));
    s->stitch(s->interface("wrist"), cuff.interface("top"));
    s->set_interface("cuff", cuff.interface("bottom"));
  }

  Placement p;
  p.rotation = Quat(Eigen::AngleAxisd(deg2rad(-theta), Vec3::UnitZ()));
  p.translation = armhole.anchor;
  s->set_placement(p);
  return s;
}

std::unique_ptr<Component> standalone_sleeve(const BodyParams& b, const ResolvedDesign& d) {
  return sleeve(b, d, default_armhole(b, d.num("opening_depth")), "sleeve");
}

}  // namespace seamkit::garments
