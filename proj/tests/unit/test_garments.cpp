#include <doctest.h>

#include <cmath>

#include "seamkit/error.hpp"
#include "seamkit/flatten.hpp"
#include "seamkit/garments.hpp"

using namespace seamkit;

namespace {

const GarmentRegistry& reg() { return GarmentRegistry::builtin(); }

BodyParams body(const std::string& name = "average_female") {
  return load_body_file(std::string(SEAMKIT_BODIES_DIR) + "/" + name + ".json");
}

ResolvedDesign design(const std::string& garment, const BodyParams& b, const Json& values = Json::object()) {
  Json doc = {{"design", Json::object()}};
  for (const auto& [k, v] : values.items()) doc["design"][k] = {{"value", v}};
  return resolve_design(garment_template(reg().get(garment), &doc), b);
}

std::unique_ptr<Component> build(const std::string& garment, const BodyParams& b, const Json& values = Json::object()) {
  return build_garment(reg().get(garment), b, design(garment, b, values));
}

// Largest deviation of a waist interface from the body waist.
double waist_error(const std::string& garment, const Component& c, double waist) {
  double worst = 0;
  for (const std::string& i : reg().get(garment).waist_interfaces) {
    worst = std::max(worst, std::abs(c.interface(i).length() - waist));
  }
  return worst;
}

const Panel& panel(const Component& c, const std::string& path) {
  const Component* node = &c;
  std::size_t start = 0;
  while (start < path.size()) {
    const std::size_t dot = path.find('.', start);
    node = &node->child(path.substr(start, dot - start));
    start = dot == std::string::npos ? path.size() : dot + 1;
  }
  return static_cast<const Panel&>(*node);
}

}  // namespace

TEST_CASE("registry contents") {
  const std::vector<std::string> names = reg().names();
  for (const char* n : {"skirt_many_panels", "pencil_skirt", "gather_skirt", "compound_skirt", "pants", "fitted_bodice",
                        "straight_bodice", "sleeve", "meta_garment"}) {
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  }
  try {
    reg().get("cape");
    FAIL("found a garment that does not exist");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("skirt_many_panels") != std::string::npos);
  }
}

TEST_CASE("every garment builds with its defaults and fits the waist") {
  for (const char* who : {"average_female", "tall_male", "petite"}) {
    const BodyParams b = body(who);
    for (const GarmentEntry& e : reg().entries()) {
      CAPTURE(e.name);
      const auto c = build(e.name, b);
      if (!e.waist_interfaces.empty()) CHECK(waist_error(e.name, *c, b["waist"]) <= 1e-3);
      const FlatPattern p = serialize(*c);
      CHECK_FALSE(p.panels.empty());
    }
  }
}

TEST_CASE("flared skirt geometry") {
  const BodyParams b = body().with("waist", 80);
  const auto c = build("skirt_many_panels", b, {{"n_panels", 4}});
  CHECK(c->interface("top").length() == doctest::Approx(80.0).epsilon(1e-12));
  for (const ResolvedEntry& r : c->interface("top").resolve()) CHECK(r.panel->edge_at(r.index).length() == doctest::Approx(20.0));
  CHECK(serialize(*c).panels.size() == 4);

  // Flare at which the hem equals the waist: rectangles.
  const double length = 0.6 * b["leg_length"];
  const double suns = 80.0 / (2 * std::numbers::pi * (80.0 / (2 * std::numbers::pi) + length));
  const auto rect = build("skirt_many_panels", b, {{"n_panels", 4}, {"flare_suns", suns}});
  for (const Panel* p : rect->collect_panels()) {
    CHECK(p->edge_at(0).length() == doctest::Approx(p->edge_at(2).length()).epsilon(1e-9));
  }
}

TEST_CASE("fitted bodice darts") {
  // No bust excess: the fitted bodice has no darts.
  const BodyParams flat = body().with("bust", 70).with("waist", 70);
  const auto fitted = build("fitted_bodice", flat, {{"sleeves", false}});
  const auto straight = build("straight_bodice", flat, {{"sleeves", false}});
  CHECK(panel(*fitted, "right.front").size() == panel(*straight, "right.front").size());
  CHECK(panel(*fitted, "right.back").size() == panel(*straight, "right.back").size());

  const BodyParams b = body().with("bust", 90).with("waist", 70);
  const auto c = build("fitted_bodice", b, {{"sleeves", false}});
  CHECK(std::abs(c->interface("bottom").length() - 70.0) <= 1e-3);
  // Bottom span minus the seam line left after the darts: what the darts absorb.
  double absorbed = 0;
  for (const char* name : {"right.front", "right.back"}) {
    const Panel& p = panel(*c, name);
    double lo = 1e9, hi = -1e9;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Point2 v = p.edge_at(i).start();
      if (std::abs(v.y) < 1e-9) {
        lo = std::min(lo, v.x);
        hi = std::max(hi, v.x);
      }
    }
    absorbed += hi - lo;
  }
  absorbed -= c->child("right").interface("bottom").length();
  CHECK(absorbed == doctest::Approx((90.0 - 70.0) / 2).epsilon(1e-6));

  // Front side seam with the dart walked flat equals the back side.
  const Panel& front = panel(*c, "right.front");
  const Panel& back = panel(*c, "right.back");
  const std::vector<EdgeId> fs = front.pieces(1);
  double front_side = 0;
  for (EdgeId id : fs) front_side += front.edge(id).length();
  const std::vector<EdgeId> bs = back.pieces(3);
  double back_side = 0;
  for (EdgeId id : bs) back_side += back.edge(id).length();
  CHECK(std::abs(front_side - back_side) <= 1e-3);
}

TEST_CASE("bodice halves are mirror images") {
  const auto c = build("fitted_bodice", body(), {{"sleeves", false}});
  for (const char* name : {"front", "back"}) {
    const Panel& r = panel(*c, std::string("right.") + name);
    const Panel& l = panel(*c, std::string("left.") + name);
    REQUIRE(r.size() == l.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      const Vec3 p = r.to_world(r.edge_at(i).start());
      const Vec3 want(-p.x(), p.y(), p.z());
      double best = 1e9;
      for (std::size_t j = 0; j < l.size(); ++j) best = std::min(best, (l.to_world(l.edge_at(j).start()) - want).norm());
      CHECK(best <= 1e-9);
    }
  }
}

TEST_CASE("collar shapes") {
  const BodyParams b = body();
  const auto round = build("fitted_bodice", b, {{"sleeves", false}, {"collar", "round"}});
  const auto v = build("fitted_bodice", b, {{"sleeves", false}, {"collar", "v"}});
  const auto kinds = [](const Panel& p) {
    int arcs = 0;
    for (std::size_t i = 0; i < p.size(); ++i) arcs += p.edge_at(i).kind() == EdgeKind::arc;
    return arcs;
  };
  CHECK(kinds(panel(*round, "right.front")) == 1);
  CHECK(kinds(panel(*v, "right.front")) == 0);
}

TEST_CASE("sleeve without cuff") {
  const BodyParams b = body();
  const auto s = build("sleeve", b);
  const Panel& f = panel(*s, "front");
  const Panel& k = panel(*s, "back");
  CHECK(s->interface("wrist").length() == doctest::Approx(f.edge(2).length() + k.edge(2).length()).epsilon(1e-12));

  // Cap length equals the bodice armhole it was inverted from.
  const garments::Armhole a = garments::default_armhole(b, 1.0);
  CHECK(std::abs(f.edge(0).length() - a.front.length()) <= 1e-3 * a.front.length());
  CHECK(std::abs(k.edge(0).length() - a.back.length()) <= 1e-3 * a.back.length());
}

TEST_CASE("gathered sleeve into a cuff") {
  const auto s = build("sleeve", body(), {{"cuff", true}, {"gather", true}, {"gather_ratio", 1.5}});
  const double wrist = s->interface("wrist").length();
  const Component& cuff = s->child("cuff");
  CHECK(wrist == doctest::Approx(1.5 * cuff.interface("top").length()).epsilon(1e-9));
  const FlatPattern p = serialize(*s);
  CHECK(p.panels.size() == 4);
}

TEST_CASE("bodice armhole and sleeve cap lengths match") {
  const BodyParams b = body("tall_male");
  // Same bodice geometry with and without the sleeve attached.
  const auto open = build("fitted_bodice", b, {{"sleeves", false}});
  const auto c = build("fitted_bodice", b);
  const double bodice_side = open->child("right").interface("armhole").length();
  const double sleeve_side = c->child("right").child("sleeve").interface("armhole").length();
  CHECK(std::abs(bodice_side - sleeve_side) <= 1e-3 * bodice_side);
}

TEST_CASE("compound skirt") {
  const BodyParams b = body();
  // One level is the base skirt on its own.
  const auto one = build("compound_skirt", b, {{"levels", 1}, {"base", "skirt_many_panels"}});
  const auto alone = build("skirt_many_panels", b);
  const FlatPattern p1 = serialize(*one), p2 = serialize(*alone);
  REQUIRE(p1.panels.size() == p2.panels.size());
  for (auto i = p1.panels.begin(), j = p2.panels.begin(); i != p1.panels.end(); ++i, ++j) CHECK(i->second == j->second);

  // A wider gathered level below a pencil skirt.
  const auto two = build("compound_skirt", b, {{"levels", 2}, {"base", "pencil_skirt"}, {"level2", "gather_skirt"}});
  CHECK(two->child("level2").interface("top").length() >= two->child("base").interface("bottom").length() - 1e-9);
  CHECK_NOTHROW(serialize(*two));

  const auto swapped = build("compound_skirt", b, {{"levels", 3}, {"base", "skirt_many_panels"}});
  CHECK_NOTHROW(serialize(*swapped));
}

TEST_CASE("meta garment combinations") {
  const BodyParams b = body();
  // Fitted bodice over a flared skirt.
  const auto dress = build("meta_garment", b, {{"upper", "fitted_bodice"}, {"bottom", "skirt_many_panels"}});
  const FlatPattern p = serialize(*dress);
  const ResolvedDesign d = design("meta_garment", b, {{"upper", "fitted_bodice"}, {"bottom", "skirt_many_panels"}});
  // 4 bodice panels, 2 x 2 sleeve panels, one waistband piece per bodice hem edge, n skirt panels.
  const std::size_t hem_edges = dress->interface("upper_bottom").resolve().size();
  CHECK(p.panels.size() == 4 + 4 + hem_edges + d.integer("skirt_many_panels.n_panels"));

  // Straight bodice with pants: same two stitches.
  const auto jumpsuit = build("meta_garment", b, {{"upper", "straight_bodice"}, {"bottom", "pants"}, {"sleeves", false}});
  CHECK(jumpsuit->stitches().size() == dress->stitches().size());
  CHECK_NOTHROW(serialize(*jumpsuit));
}

TEST_CASE("out-of-range design values clamp with a warning") {
  const BodyParams b = body();
  const ResolvedDesign d = design("fitted_bodice", b, {{"collar_width", 100.0}});
  CHECK(d.num("collar_width") == doctest::Approx(b["shoulder_w"] - 6));
  REQUIRE_FALSE(d.warnings().empty());
  CHECK(d.warnings()[0].param == "collar_width");
}
