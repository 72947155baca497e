#include <algorithm>

#include "seamkit/error.hpp"
#include "seamkit/garments.hpp"

namespace seamkit {

namespace {

constexpr const char* kCompound = "compound_skirt";
constexpr const char* kMeta = "meta_garment";
const char* const kLevels[] = {"base", "level2", "level3"};

std::vector<std::string> level_skirts(const GarmentRegistry& r) {
  std::vector<std::string> out = r.skirt_names();
  out.erase(std::remove(out.begin(), out.end(), kCompound), out.end());
  if (out.empty()) throw ValidationError("no skirts registered", kCompound);
  return out;
}

std::string pick(const std::vector<std::string>& options, const std::string& preferred) {
  return std::find(options.begin(), options.end(), preferred) != options.end() ? preferred : options.front();
}

// World height of an interface's centre.
double interface_y(const Interface& i) { return i.com().y(); }

}  // namespace

GarmentEntry compound_skirt_entry(const GarmentRegistry& r) {
  GarmentEntry e;
  e.name = kCompound;
  e.role = roles::bottom;
  e.description = "Up to three skirts stacked, each starting at the hem of the one above";
  e.waist_interfaces = {"top"};
  e.design = [&r] {
    const std::vector<std::string> skirts = level_skirts(r);
    DesignTemplate t;
    t.integer("levels", 2, "1", "3", "Number of stacked skirts");
    t.choice("base", pick(skirts, "pencil_skirt"), skirts, "Top level");
    t.choice("level2", pick(skirts, "skirt_many_panels"), skirts, "Second level");
    t.choice("level3", pick(skirts, "gather_skirt"), skirts, "Third level");
    for (const char* level : kLevels) {
      for (const std::string& s : skirts) {
        t.merge_prefixed(r.get(s).design(), std::string(level) + "." + s);
      }
    }
    return t;
  };
  e.skirt = [&r](const BodyParams& b, const ResolvedDesign& d, const SkirtFit& fit) {
    auto out = std::make_unique<Component>(kCompound);
    Component* prev = nullptr;
    SkirtFit level_fit = fit;
    const int n = d.integer("levels");
    for (int k = 0; k < n; ++k) {
      const std::string type = d.choice(kLevels[k]);
      const GarmentEntry& entry = r.get(type);
      std::unique_ptr<Component> level =
          entry.skirt(b, d.sub(std::string(kLevels[k]) + "." + type), level_fit);
      level->rename(kLevels[k]);
      Component& c = out->add(std::move(level));
      if (prev) {
        place_by_interface(c, c.interface("top"), prev->interface("bottom"));
        out->stitch(prev->interface("bottom"), c.interface("top"));
      }
      level_fit = SkirtFit{c.interface("bottom").length(), interface_y(c.interface("bottom"))};
      prev = &c;
    }
    out->set_interface("top", out->children().front()->interface("top"));
    out->set_interface("bottom", prev->interface("bottom"));
    return out;
  };
  return e;
}

GarmentEntry meta_garment_entry(const GarmentRegistry& r) {
  GarmentEntry e;
  e.name = kMeta;
  e.role = roles::full;
  e.description = "Any upper garment joined to any bottom by a waistband";
  e.waist_interfaces = {"upper_bottom", "lower_top"};
  e.design = [&r] {
    const std::vector<std::string> uppers = r.names_with_role(roles::upper);
    const std::vector<std::string> bottoms = r.names_with_role(roles::bottom);
    if (uppers.empty() || bottoms.empty()) throw ValidationError("meta garment needs uppers and bottoms", kMeta);
    DesignTemplate t;
    t.choice("upper", pick(uppers, "fitted_bodice"), uppers, "Upper garment");
    t.choice("bottom", pick(bottoms, "skirt_many_panels"), bottoms, "Bottom garment");
    t.boolean("sleeves", true, "Attach sleeves to the upper garment");
    t.choice("collar", "round", {"round", "v"}, "Neckline shape of the upper garment");
    t.number("waistband_width", 4.0, "2", "8", "Waistband height, cm");
    for (const std::string& n : uppers) t.merge_prefixed(r.get(n).design(), n);
    for (const std::string& n : bottoms) t.merge_prefixed(r.get(n).design(), n);
    return t;
  };
  e.build = [&r](const BodyParams& b, const ResolvedDesign& d) {
    const std::string upper_name = d.choice("upper");
    const std::string lower_name = d.choice("bottom");
    ResolvedDesign ud = d.sub(upper_name);
    if (ud.has("sleeves")) ud = ud.with("sleeves", d.flag("sleeves"));
    if (ud.has("collar")) ud = ud.with("collar", d.choice("collar"));

    auto out = std::make_unique<Component>(kMeta);
    std::unique_ptr<Component> upper_c = r.get(upper_name).build(b, ud);
    upper_c->rename("upper");
    Component& upper = out->add(std::move(upper_c));
    const Interface& upper_bottom = upper.interface("bottom");

    // One band piece per edge of the upper's hem, so the upper never has to
    // be cut to match whatever hangs below it.
    std::vector<RingPiece> pieces;
    for (const ResolvedEntry& re : upper_bottom.resolve()) {
      const double l = re.panel->edge_at(re.index).length();
      pieces.push_back({l, l});
    }
    const double band_h = d.num("waistband_width");
    const double top_y = interface_y(upper_bottom);
    Component& band = out->add(make_ring("waistband", pieces, band_h, top_y));

    const GarmentEntry& lower_entry = r.get(lower_name);
    const ResolvedDesign ld = d.sub(lower_name);
    std::unique_ptr<Component> lower_c =
        lower_entry.skirt ? lower_entry.skirt(b, ld, SkirtFit{band.interface("bottom").length(), top_y - band_h})
                          : lower_entry.build(b, ld);
    lower_c->rename("lower");
    Component& lower = out->add(std::move(lower_c));
    place_by_interface(lower, lower.interface("top"), band.interface("bottom"));

    out->stitch(upper_bottom, band.interface("top"));
    out->stitch(band.interface("bottom"), lower.interface("top"));
    out->set_interface("upper_bottom", upper_bottom);
    out->set_interface("lower_top", lower.interface("top"));
    return out;
  };
  return e;
}

}  // namespace seamkit
