#include <algorithm>
#include <cmath>
#include <numbers>

#include "seamkit/error.hpp"
#include "seamkit/garments.hpp"

namespace seamkit {

GarmentRegistry& GarmentRegistry::builtin() {
  static GarmentRegistry* r = [] {
    auto* reg = new GarmentRegistry;
    register_builtin_garments(*reg);
    return reg;
  }();
  return *r;
}

void GarmentRegistry::add(GarmentEntry e) {
  if (has(e.name)) throw ValidationError("garment '" + e.name + "' is already registered", e.name);
  if (!e.design || (!e.build && !e.skirt)) throw ValidationError("garment '" + e.name + "' is incomplete", e.name);
  if (!e.build) {
    // Skirts build standalone at the body waist.
    SkirtBuilder skirt = e.skirt;
    e.build = [skirt](const BodyParams& b, const ResolvedDesign& d) {
      return skirt(b, d, SkirtFit{b["waist"], b["waist_level"]});
    };
  }
  entries_.push_back(std::move(e));
}

bool GarmentRegistry::has(const std::string& name) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const GarmentEntry& e) { return e.name == name; });
}

const GarmentEntry& GarmentRegistry::get(const std::string& name) const {
  for (const GarmentEntry& e : entries_) {
    if (e.name == name) return e;
  }
  std::string known;
  for (const GarmentEntry& e : entries_) known += (known.empty() ? "" : ", ") + e.name;
  throw ValidationError("unknown garment '" + name + "' (registered: " + known + ")", name);
}

std::vector<std::string> GarmentRegistry::names() const {
  std::vector<std::string> out;
  for (const GarmentEntry& e : entries_) out.push_back(e.name);
  return out;
}

std::vector<std::string> GarmentRegistry::names_with_role(const std::string& role) const {
  std::vector<std::string> out;
  for (const GarmentEntry& e : entries_) {
    if (e.role == role) out.push_back(e.name);
  }
  return out;
}

std::vector<std::string> GarmentRegistry::skirt_names() const {
  std::vector<std::string> out;
  for (const GarmentEntry& e : entries_) {
    if (e.skirt) out.push_back(e.name);
  }
  return out;
}

void register_builtin_garments(GarmentRegistry& r) {
  r.add({"skirt_many_panels", roles::bottom, "Flared skirt of n trapezoid panels", garments::skirt_many_panels_design,
         nullptr, garments::skirt_many_panels, {"top"}});
  r.add({"pencil_skirt", roles::bottom, "Fitted front/back skirt with curved hips", garments::pencil_skirt_design,
         nullptr, garments::pencil_skirt, {"top"}});
  r.add({"gather_skirt", roles::bottom, "Gathered skirt on a waistband", garments::gather_skirt_design, nullptr,
         garments::gather_skirt, {"top"}});
  r.add({"pants", roles::bottom, "Two-legged trousers", garments::pants_design, garments::pants, nullptr, {"top"}});
  r.add({"fitted_bodice", roles::upper, "Bodice with bust and waist darts",
         [] { return garments::bodice_design(true); },
         [](const BodyParams& b, const ResolvedDesign& d) { return garments::bodice(b, d, true); }, nullptr,
         {"bottom"}});
  r.add({"straight_bodice", roles::upper, "Dartless bodice", [] { return garments::bodice_design(false); },
         [](const BodyParams& b, const ResolvedDesign& d) { return garments::bodice(b, d, false); }, nullptr,
         {"bottom"}});
  r.add({"sleeve", roles::part, "Sleeve for a plain armhole, optional cuff", garments::sleeve_design,
         garments::standalone_sleeve, nullptr, {}});
  r.add(compound_skirt_entry(r));
  r.add(meta_garment_entry(r));
}

DesignTemplate garment_template(const GarmentEntry& e, const Json* design_doc) {
  DesignTemplate t = e.design();
  if (design_doc) t = t.overridden(*design_doc);
  return t;
}

std::unique_ptr<Component> build_garment(const GarmentEntry& e, const BodyParams& body, const ResolvedDesign& d) {
  std::unique_ptr<Component> c = e.build(body, d);
  validate(*c);
  return c;
}

std::unique_ptr<Component> make_ring(const std::string& name, const std::vector<RingPiece>& pieces, double height,
                                     double top_y) {
  // One flat piece cannot wrap around the axis; its seams would meet on it.
  if (pieces.size() < 2) throw GeometryError("a ring needs at least two pieces", name);
  double total = 0.0;
  for (const RingPiece& p : pieces) {
    if (!(p.top > 0.0 && p.bottom > 0.0)) throw GeometryError("ring piece widths must be positive", name);
    total += p.top;
  }
  const double radius = total / (2.0 * std::numbers::pi);
  auto ring = std::make_unique<Component>(name);
  std::vector<Panel*> panels;
  std::vector<Placement> placements;
  double run = 0.0;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const RingPiece& p = pieces[k];
    // Edges: 0 bottom, 1 right side (up), 2 top, 3 left side (down).
    const EdgeSequence loop = EdgeSequence::from_verts(
        {{-p.bottom / 2, -height}, {p.bottom / 2, -height}, {p.top / 2, 0.0}, {-p.top / 2, 0.0}}, true);
    Panel& panel = ring->add(std::make_unique<Panel>("panel_" + std::to_string(k), loop));
    const double angle = 2.0 * std::numbers::pi * (run + p.top / 2) / total;
    run += p.top;
    Placement pl;
    pl.rotation = Quat(Eigen::AngleAxisd(angle, Vec3::UnitY()));
    pl.translation = pl.rotation * Vec3(0.0, top_y, radius);
    placements.push_back(pl);
    panels.push_back(&panel);
  }
  // Interfaces refer to the construction direction, so they are taken
  // before placement can re-orient any loop.
  Interface top;
  Interface bottom;
  for (Panel* p : panels) {
    top = top.concat(p->interface_of({2}, true));
    bottom = bottom.concat(p->interface_of({0}));
  }
  for (std::size_t k = 0; k < panels.size(); ++k) {
    Panel* next = panels[(k + 1) % panels.size()];
    ring->stitch(panels[k]->interface_of({1}), next->interface_of({3}, true));
  }
  ring->set_interface("top", top);
  ring->set_interface("bottom", bottom);
  for (std::size_t k = 0; k < panels.size(); ++k) panels[k]->set_placement(placements[k]);
  return ring;
}

}  // namespace seamkit
