#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seamkit/component.hpp"
#include "seamkit/params.hpp"

namespace seamkit {

/// Where a skirt starts: the girth and height of its top edge. Levels of a
/// compound skirt start at the hem of the level above.
struct SkirtFit {
  double girth = 0.0;  // cm
  double top_y = 0.0;  // world height of the top edge, cm
};

using GarmentBuilder = std::function<std::unique_ptr<Component>(const BodyParams&, const ResolvedDesign&)>;
using SkirtBuilder =
    std::function<std::unique_ptr<Component>(const BodyParams&, const ResolvedDesign&, const SkirtFit&)>;

/// Roles used by meta_garment to enumerate its choices.
namespace roles {
inline constexpr const char* upper = "upper";    // exposes "bottom"
inline constexpr const char* bottom = "bottom";  // exposes "top"
inline constexpr const char* part = "part";      // standalone pieces (sleeve)
inline constexpr const char* full = "full";      // combinations
}  // namespace roles

struct GarmentEntry {
  std::string name;
  std::string role;
  std::string description;
  std::function<DesignTemplate()> design;
  GarmentBuilder build;
  /// Set for skirts that can start at an arbitrary girth (compound levels).
  SkirtBuilder skirt;
  /// Root interfaces that each run once around the body waist.
  std::vector<std::string> waist_interfaces;
};

/// Name -> garment program. Adding an entry is all it takes for meta and
/// compound garments to offer it.
class GarmentRegistry {
 public:
  /// Registry with every built-in garment.
  static GarmentRegistry& builtin();

  void add(GarmentEntry e);
  bool has(const std::string& name) const;
  const GarmentEntry& get(const std::string& name) const;
  std::vector<std::string> names() const;
  std::vector<std::string> names_with_role(const std::string& role) const;
  std::vector<std::string> skirt_names() const;
  const std::vector<GarmentEntry>& entries() const { return entries_; }

 private:
  std::vector<GarmentEntry> entries_;
};

/// Registers the built-in garments into `r`. Composite garments (meta,
/// compound) look names up in `r` when their template or build runs.
void register_builtin_garments(GarmentRegistry& r);

/// Entries of the compound skirt and meta garment bound to a registry.
GarmentEntry compound_skirt_entry(const GarmentRegistry& r);
GarmentEntry meta_garment_entry(const GarmentRegistry& r);

/// Template resolved against the body, with an optional design document on top.
DesignTemplate garment_template(const GarmentEntry& e, const Json* design_doc = nullptr);

/// Builds and validates a garment.
std::unique_ptr<Component> build_garment(const GarmentEntry& e, const BodyParams& body, const ResolvedDesign& d);

// ---- Building blocks shared by the garment programs ---------------------

/// One trapezoid of a ring: top and bottom widths, cm.
struct RingPiece {
  double top = 0.0;
  double bottom = 0.0;
};

/// Two or more panels placed around the vertical axis, side seams stitched, each top
/// edge `height` above its bottom edge. Exposes "top" and "bottom" running
/// around the body from the centre front.
std::unique_ptr<Component> make_ring(const std::string& name, const std::vector<RingPiece>& pieces, double height,
                                     double top_y);

namespace garments {

DesignTemplate skirt_many_panels_design();
std::unique_ptr<Component> skirt_many_panels(const BodyParams& b, const ResolvedDesign& d, const SkirtFit& fit);
DesignTemplate pencil_skirt_design();
std::unique_ptr<Component> pencil_skirt(const BodyParams& b, const ResolvedDesign& d, const SkirtFit& fit);
DesignTemplate gather_skirt_design();
std::unique_ptr<Component> gather_skirt(const BodyParams& b, const ResolvedDesign& d, const SkirtFit& fit);

DesignTemplate pants_design();
std::unique_ptr<Component> pants(const BodyParams& b, const ResolvedDesign& d);

DesignTemplate sleeve_design();
DesignTemplate bodice_design(bool fitted);
std::unique_ptr<Component> bodice(const BodyParams& b, const ResolvedDesign& d, bool fitted);

/// Bodice-side armhole curves for one body half, drawn from the shoulder
/// point to the underarm in the front panel frame (front) or the mirrored
/// back frame (back).
struct Armhole {
  Edge front = Edge::line({0, 0}, {0, -1});
  Edge back = Edge::line({0, 0}, {0, -1});
  /// World position of the shoulder point, where the sleeve crown goes.
  Vec3 anchor = Vec3::Zero();
};

/// The armhole a plain bodice of this body would have.
Armhole default_armhole(const BodyParams& b, double opening_depth);

/// Sleeve for one arm. Interfaces: "armhole" (cap, from back underarm over
/// the crown to front underarm), "wrist". `design` is the sleeve's own
/// sub-design.
std::unique_ptr<Component> sleeve(const BodyParams& b, const ResolvedDesign& design, const Armhole& armhole,
                                  const std::string& name);
std::unique_ptr<Component> standalone_sleeve(const BodyParams& b, const ResolvedDesign& d);

}  // namespace garments

}  // namespace seamkit
