#include "seamkit/component.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "seamkit/error.hpp"

namespace seamkit {

// ---- Placement ------------------------------------------------------------

Placement Placement::operator*(const Placement& child) const {
  Placement out;
  out.rotation = (rotation * child.rotation).normalized();
  out.translation = rotation * child.translation + translation;
  return out;
}

Placement Placement::inverse() const {
  Placement out;
  out.rotation = rotation.conjugate();
  out.translation = -(out.rotation * translation);
  return out;
}

Quat Placement::from_euler_deg(double rx, double ry, double rz) {
  using Eigen::AngleAxisd;
  const Quat q = AngleAxisd(deg2rad(rz), Vec3::UnitZ()) * AngleAxisd(deg2rad(ry), Vec3::UnitY()) *
                 AngleAxisd(deg2rad(rx), Vec3::UnitX());
  return q.normalized();
}

std::array<double, 3> Placement::euler_deg() const {
  const Mat3 r = rotation.normalized().toRotationMatrix();
  const double s = std::clamp(-r(2, 0), -1.0, 1.0);
  double a;
  double b = std::asin(s);
  double c;
  if (std::abs(s) > 1.0 - 1e-12) {
    // Gimbal lock: fold the z rotation into x.
    a = std::atan2(-r(1, 2), r(1, 1));
    c = 0.0;
  } else {
    a = std::atan2(r(2, 1), r(2, 2));
    c = std::atan2(r(1, 0), r(0, 0));
  }
  auto clean = [](double rad) {
    const double d = rad2deg(rad);
    return std::abs(d) < 1e-12 ? 0.0 : d;
  };
  return {clean(a), clean(b), clean(c)};
}

// ---- Interface ------------------------------------------------------------

Interface Interface::reversed() const {
  std::vector<InterfaceEntry> out(entries_.rbegin(), entries_.rend());
  for (InterfaceEntry& e : out) e.reverse = !e.reverse;
  return Interface(std::move(out), role_);
}

Interface Interface::concat(const Interface& other) const {
  std::vector<InterfaceEntry> out = entries_;
  out.insert(out.end(), other.entries_.begin(), other.entries_.end());
  return Interface(std::move(out), role_.empty() ? other.role_ : role_);
}

std::vector<ResolvedEntry> Interface::resolve() const {
  std::vector<ResolvedEntry> out;
  for (const InterfaceEntry& e : entries_) {
    if (e.panel == nullptr) throw ValidationError("interface entry without a panel");
    e.panel->resolve_into(e.edge, e.reverse, out);
  }
  return out;
}

double Interface::length() const {
  double sum = 0.0;
  for (const ResolvedEntry& r : resolve()) sum += r.panel->edge_at(r.index).length();
  return sum;
}

Vec3 Interface::com() const {
  Vec3 acc = Vec3::Zero();
  double total = 0.0;
  for (const ResolvedEntry& r : resolve()) {
    const Edge& e = r.panel->edge_at(r.index);
    const double w = e.length();
    acc += w * r.panel->to_world(e.eval(0.5));
    total += w;
  }
  if (!(total > 0.0)) throw GeometryError("interface has no edges");
  return acc / total;
}

// ---- Component ------------------------------------------------------------

Component::Component(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw ValidationError("component name must not be empty");
}

std::string Component::path() const {
  return parent_ == nullptr ? name_ : parent_->path() + "." + name_;
}

Placement Component::world_placement() const {
  return parent_ == nullptr ? placement_ : parent_->world_placement() * placement_;
}

void Component::set_placement(const Placement& p) {
  placement_ = p;
  placement_.rotation.normalize();
  placement_changed();
}

void Component::translate_by(const Vec3& v) {
  placement_.translation += v;
  placement_changed();
}

void Component::rotate_by(const Quat& r) {
  Placement rot;
  rot.rotation = r.normalized();
  placement_ = rot * placement_;
  placement_changed();
}

void Component::set_auto_orient(bool on) { auto_orient_ = on; }

bool Component::auto_orient() const {
  if (auto_orient_) return *auto_orient_;
  return parent_ == nullptr ? true : parent_->auto_orient();
}

void Component::placement_changed() {
  on_world_changed();
  for (const auto& c : children_) c->placement_changed();
}

void Component::on_world_changed() {}

void Component::adopt(std::unique_ptr<Component> child) {
  if (!child) throw ValidationError("null subcomponent", path());
  if (has_child(child->name())) {
    throw ValidationError("duplicate subcomponent name '" + child->name() + "'", path());
  }
  child->parent_ = this;
  children_.push_back(std::move(child));
  children_.back()->placement_changed();
}

Component& Component::child(const std::string& name) const {
  for (const auto& c : children_) {
    if (c->name() == name) return *c;
  }
  throw ValidationError("no subcomponent named '" + name + "'", path());
}

bool Component::has_child(const std::string& name) const {
  return std::any_of(children_.begin(), children_.end(),
                     [&](const auto& c) { return c->name() == name; });
}

std::unique_ptr<Component> Component::release(const std::string& name) {
  for (auto it = children_.begin(); it != children_.end(); ++it) {
    if ((*it)->name() == name) {
      std::unique_ptr<Component> out = std::move(*it);
      children_.erase(it);
      out->parent_ = nullptr;
      return out;
    }
  }
  throw ValidationError("no subcomponent named '" + name + "'", path());
}

void Component::set_interface(const std::string& name, Interface i) {
  interfaces_[name] = std::move(i);
}

const Interface& Component::interface(const std::string& name) const {
  auto it = interfaces_.find(name);
  if (it == interfaces_.end()) throw ValidationError("no interface named '" + name + "'", path());
  return it->second;
}

bool Component::has_interface(const std::string& name) const { return interfaces_.count(name) > 0; }

void Component::stitch(const Interface& a, const Interface& b) {
  if (a.empty() || b.empty()) throw ValidationError("stitching rule with an empty interface", path());
  stitches_.push_back({a, b});
}

std::vector<Panel*> Component::collect_panels() {
  std::vector<Panel*> out;
  if (is_panel()) out.push_back(static_cast<Panel*>(this));
  for (const auto& c : children_) {
    std::vector<Panel*> sub = c->collect_panels();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::vector<const Panel*> Component::collect_panels() const {
  std::vector<Panel*> all = const_cast<Component*>(this)->collect_panels();
  return {all.begin(), all.end()};
}

Vec3 Component::com() const {
  Vec3 acc = Vec3::Zero();
  double total = 0.0;
  for (const Panel* p : collect_panels()) {
    for (const Edge& e : p->edges()) {
      const double w = e.length();
      acc += w * p->to_world(e.eval(0.5));
      total += w;
    }
  }
  if (!(total > 0.0)) throw GeometryError("component has no panels");
  return acc / total;
}

std::unique_ptr<Component> Component::clone_node() const {
  auto out = std::make_unique<Component>(name_);
  copy_base_into(*out);
  return out;
}

void Component::copy_base_into(Component& out) const {
  out.name_ = name_;
  out.placement_ = placement_;
  out.auto_orient_ = auto_orient_;
  out.interfaces_ = interfaces_;
  out.stitches_ = stitches_;
}

std::unique_ptr<Component> Component::clone_tree(PanelMap& map) const {
  std::unique_ptr<Component> node = clone_node();
  if (is_panel()) map[static_cast<const Panel*>(this)] = static_cast<Panel*>(node.get());
  for (const auto& c : children_) {
    std::unique_ptr<Component> sub = c->clone_tree(map);
    sub->parent_ = node.get();
    node->children_.push_back(std::move(sub));
  }
  return node;
}

void Component::remap(const PanelMap& map) {
  auto fix = [&](Interface& i) {
    for (InterfaceEntry& e : i.entries()) {
      auto it = map.find(e.panel);
      if (it != map.end()) e.panel = it->second;
    }
  };
  for (auto& [name, i] : interfaces_) fix(i);
  for (StitchingRule& r : stitches_) {
    fix(r.a);
    fix(r.b);
  }
  for (const auto& c : children_) c->remap(map);
}

std::unique_ptr<Component> Component::clone(PanelMap& map) const {
  std::unique_ptr<Component> out = clone_tree(map);
  out->remap(map);
  return out;
}

std::unique_ptr<Component> Component::clone() const {
  PanelMap map;
  return clone(map);
}

// ---- Panel ----------------------------------------------------------------

Panel::Panel(std::string name, const EdgeSequence& loop) : Component(std::move(name)) {
  if (!loop.is_loop()) throw ValidationError("panel edges do not form a closed loop", this->name());
  for (const Edge& e : loop) slots_.push_back({issue_id(), e, false});
}

EdgeSequence Panel::edges() const {
  std::vector<Edge> out;
  out.reserve(slots_.size());
  for (const Slot& s : slots_) out.push_back(s.edge);
  return EdgeSequence(std::move(out));
}

const Edge& Panel::edge_at(std::size_t index) const {
  if (index >= slots_.size()) throw ValidationError("edge index out of range", path());
  return slots_[index].edge;
}

EdgeId Panel::id_at(std::size_t index) const {
  if (index >= slots_.size()) throw ValidationError("edge index out of range", path());
  return slots_[index].id;
}

std::size_t Panel::index_of(EdgeId id) const {
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (slots_[i].id == id) return i;
  }
  throw ValidationError("edge id " + std::to_string(id) + " is not a current edge", path());
}

bool Panel::is_current(EdgeId id) const {
  return std::any_of(slots_.begin(), slots_.end(), [&](const Slot& s) { return s.id == id; });
}

bool Panel::is_known(EdgeId id) const { return is_current(id) || splits_.count(id) > 0; }

bool Panel::flipped(EdgeId id) const {
  auto it = splits_.find(id);
  if (it == splits_.end()) return slots_[index_of(id)].flipped;
  // Pieces inherit the flip state of their parent and are toggled together.
  for (EdgeId c : it->second) {
    if (is_known(c)) return flipped(c);
  }
  return false;
}

std::vector<EdgeId> Panel::pieces(EdgeId id) const {
  auto it = splits_.find(id);
  if (it == splits_.end()) {
    index_of(id);
    return {id};
  }
  std::vector<EdgeId> out;
  for (EdgeId c : it->second) {
    std::vector<EdgeId> sub = pieces(c);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

void Panel::resolve_into(EdgeId id, bool reverse, std::vector<ResolvedEntry>& out) {
  auto it = splits_.find(id);
  if (it != splits_.end()) {
    const std::vector<EdgeId>& kids = it->second;
    if (reverse) {
      for (auto k = kids.rbegin(); k != kids.rend(); ++k) resolve_into(*k, true, out);
    } else {
      for (EdgeId k : kids) resolve_into(k, false, out);
    }
    return;
  }
  const std::size_t index = index_of(id);
  out.push_back({this, id, reverse, index, reverse != slots_[index].flipped});
}

Interface Panel::interface_of(std::initializer_list<EdgeId> ids, bool reverse) const {
  return interface_of(std::vector<EdgeId>(ids), reverse);
}

Interface Panel::interface_of(const std::vector<EdgeId>& ids, bool reverse) const {
  std::vector<InterfaceEntry> entries;
  for (EdgeId id : ids) {
    if (!is_known(id)) throw ValidationError("unknown edge id " + std::to_string(id), path());
    entries.push_back({const_cast<Panel*>(this), id, reverse != flipped(id)});
  }
  return Interface(std::move(entries));
}

std::vector<EdgeId> Panel::replace_run(std::size_t first, std::size_t count,
                                       const std::vector<Edge>& edges,
                                       const std::vector<std::optional<std::size_t>>& parents) {
  std::vector<Slot> old(slots_.begin() + first, slots_.begin() + first + count);
  std::vector<std::vector<EdgeId>> kids(count);
  std::vector<Slot> fresh;
  std::vector<EdgeId> ids;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const EdgeId id = issue_id();
    bool flip = false;
    if (parents[i]) {
      flip = old[*parents[i]].flipped;
      kids[*parents[i]].push_back(id);
    }
    fresh.push_back({id, edges[i], flip});
    ids.push_back(id);
  }
  for (std::size_t j = 0; j < count; ++j) {
    if (old[j].flipped) std::reverse(kids[j].begin(), kids[j].end());
    splits_[old[j].id] = kids[j];
  }
  slots_.erase(slots_.begin() + first, slots_.begin() + first + count);
  slots_.insert(slots_.begin() + first, fresh.begin(), fresh.end());
  check_loop();
  return ids;
}

void Panel::rotate_start(std::size_t new_first) {
  std::rotate(slots_.begin(), slots_.begin() + new_first, slots_.end());
}

void Panel::check_loop() const {
  if (!edges().is_loop()) throw GeometryError("panel '" + path() + "' loop is no longer closed");
}

std::vector<EdgeId> Panel::subdivide(EdgeId id, std::span<const double> fractions) {
  const std::size_t index = index_of(id);
  const EdgeSequence parts = slots_[index].edge.subdivide(fractions);
  return replace_run(index, 1, parts.edges(),
                     std::vector<std::optional<std::size_t>>(parts.size(), std::size_t{0}));
}

namespace {

std::vector<std::optional<std::size_t>> parents_of(const SpliceResult& r) {
  std::vector<std::optional<std::size_t>> out;
  for (const PieceOrigin& o : r.origin) {
    switch (o.source) {
      case PieceOrigin::Source::before: out.emplace_back(0); break;
      case PieceOrigin::Source::after: out.emplace_back(1); break;
      case PieceOrigin::Source::shape: out.emplace_back(std::nullopt); break;
    }
  }
  return out;
}

std::vector<EdgeId> shape_ids(const SpliceResult& r, const std::vector<EdgeId>& ids) {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (r.origin[i].source == PieceOrigin::Source::shape) out.push_back(ids[i]);
  }
  return out;
}

}  // namespace

std::vector<EdgeId> Panel::project_on_edge(EdgeId id, const EdgeSequence& shape, double t,
                                           bool reflect, SpliceResult* report) {
  const std::size_t index = index_of(id);
  SpliceResult r = seamkit::project_on_edge(slots_[index].edge, shape, t, reflect);
  std::vector<std::optional<std::size_t>> parents = parents_of(r);
  for (auto& p : parents) {
    if (p) p = 0;  // both leftovers derive from the single target edge
  }
  const std::vector<EdgeId> ids = replace_run(index, 1, r.edges.edges(), parents);
  std::vector<EdgeId> out = shape_ids(r, ids);
  if (report) *report = std::move(r);
  return out;
}

std::vector<EdgeId> Panel::project_on_corner(EdgeId first, const EdgeSequence& shape, double rotation,
                                             SpliceResult* report) {
  std::size_t index = index_of(first);
  if (index + 1 == slots_.size()) {
    rotate_start(index);
    index = 0;
  }
  SpliceResult r = seamkit::project_on_corner(slots_[index].edge, slots_[index + 1].edge, shape, rotation);
  const std::vector<EdgeId> ids = replace_run(index, 2, r.edges.edges(), parents_of(r));
  std::vector<EdgeId> out = shape_ids(r, ids);
  if (report) *report = std::move(r);
  return out;
}

void Panel::transform_geometry(const std::function<EdgeSequence(const EdgeSequence&)>& f) {
  const EdgeSequence moved = f(edges());
  if (moved.size() != slots_.size()) throw GeometryError("geometry transform changed the edge count");
  for (std::size_t i = 0; i < slots_.size(); ++i) slots_[i].edge = moved[i];
  check_loop();
}

void Panel::reverse_loop() {
  std::reverse(slots_.begin(), slots_.end());
  for (Slot& s : slots_) {
    s.edge = s.edge.reversed();
    s.flipped = !s.flipped;
  }
}

namespace {

// Loop vertices plus the extremal points of curved edges.
std::vector<Point2> vote_polyline(const EdgeSequence& loop) {
  std::vector<Point2> pts;
  for (const Edge& e : loop) {
    pts.push_back(e.start());
    for (Point2 p : e.extremal_points()) pts.push_back(p);
  }
  return pts;
}

Point2 mean(const std::vector<Point2>& pts) {
  Point2 c;
  for (Point2 p : pts) c += p;
  return c / static_cast<double>(pts.size());
}

}  // namespace

Point2 Panel::local_com() const { return mean(vote_polyline(edges())); }

int Panel::winding() const {
  const std::vector<Point2> pts = vote_polyline(edges());
  const Point2 com = mean(pts);
  int votes = 0;
  double area = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2 s = pts[i];
    const Point2 e = pts[(i + 1) % pts.size()];
    const double c = cross(s - e, s - com);
    votes += c > 0.0 ? 1 : c < 0.0 ? -1 : 0;
    area += cross(s, e);
  }
  if (votes != 0) return votes > 0 ? 1 : -1;
  return area >= 0.0 ? 1 : -1;
}

Vec3 Panel::normal() const {
  return world_placement().rotation * Vec3(0.0, 0.0, static_cast<double>(winding()));
}

Vec3 Panel::to_world(Point2 p) const { return world_placement().apply(lift(p)); }

bool Panel::orient_normal(std::optional<Vec3> body_center) {
  const Vec3 com = to_world(local_com());
  const Vec3 center = body_center ? *body_center : Vec3(0.0, com.y(), 0.0);
  if (normal().dot(com - center) < 0.0) {
    reverse_loop();
    return true;
  }
  return false;
}

void Panel::on_world_changed() {
  if (auto_orient()) orient_normal();
}

std::unique_ptr<Component> Panel::clone_node() const {
  auto out = std::make_unique<Panel>(name(), edges());
  copy_base_into(*out);
  out->slots_ = slots_;
  out->next_id_ = next_id_;
  out->splits_ = splits_;
  return out;
}

// ---- Smart copies and placement helpers ----------------------------------

namespace {

const Mat3 kMirrorX = Vec3(-1.0, 1.0, 1.0).asDiagonal();

void conjugate_subtree(Component& c) {
  for (const auto& child : c.children()) {
    Placement p = child->placement();
    p.rotation = Quat(kMirrorX * p.rotation.toRotationMatrix() * kMirrorX);
    p.translation = kMirrorX * p.translation;
    child->set_placement(p);
    conjugate_subtree(*child);
  }
}

void reflect_panels(Component& c) {
  for (Panel* p : c.collect_panels()) {
    p->transform_geometry([](const EdgeSequence& s) { return s.reflected({0.0, 0.0}, {0.0, 1.0}); });
  }
}

}  // namespace

std::unique_ptr<Component> mirror(const Component& c, double axis_x, std::string new_name) {
  std::unique_ptr<Component> out = c.clone();
  out->rename(std::move(new_name));
  const bool orient = out->auto_orient();
  out->set_auto_orient(false);
  reflect_panels(*out);
  conjugate_subtree(*out);
  Placement p = out->placement();
  const Vec3 axis(axis_x, 0.0, 0.0);
  p.rotation = Quat(kMirrorX * p.rotation.toRotationMatrix() * kMirrorX);
  p.translation = kMirrorX * (p.translation - axis) + axis;
  out->set_auto_orient(orient);
  out->set_placement(p);
  return out;
}

std::unique_ptr<Component> distribute_line(const Component& c, int n, const Vec3& step,
                                           std::string parent_name) {
  if (n < 1) throw ValidationError("distribution count must be at least 1", c.name());
  auto parent = std::make_unique<Component>(std::move(parent_name));
  for (int k = 0; k < n; ++k) {
    std::unique_ptr<Component> copy = c.clone();
    copy->rename(c.name() + "_" + std::to_string(k));
    copy->translate_by(step * static_cast<double>(k));
    parent->add(std::move(copy));
  }
  return parent;
}

std::unique_ptr<Component> distribute_circle(const Component& c, int n, std::string parent_name,
                                             double base_angle_deg) {
  if (n < 1) throw ValidationError("distribution count must be at least 1", c.name());
  auto parent = std::make_unique<Component>(std::move(parent_name));
  for (int k = 0; k < n; ++k) {
    std::unique_ptr<Component> copy = c.clone();
    copy->rename(c.name() + "_" + std::to_string(k));
    const double angle = base_angle_deg + 360.0 * k / n;
    copy->rotate_by(Quat(Eigen::AngleAxisd(deg2rad(angle), Vec3::UnitY())));
    parent->add(std::move(copy));
  }
  return parent;
}

void place_by_interface(Component& moved, const Interface& moved_if, const Interface& target_if,
                        double gap) {
  const Vec3 from = moved_if.com();
  Vec3 delta = target_if.com() - from;
  if (gap != 0.0) {
    const Vec3 away = moved.com() - from;
    if (away.norm() < 1e-9) throw GeometryError("gap direction undefined: interface COM equals component COM");
    delta += gap * away.normalized();
  }
  const Quat parent_rot = moved.parent() ? moved.parent()->world_placement().rotation : Quat::Identity();
  moved.translate_by(parent_rot.conjugate() * delta);
}

namespace {

void check_interface(const Interface& i, const std::set<const Panel*>& reachable, const std::string& where,
                     const std::string& path) {
  if (i.empty()) throw ValidationError("empty interface " + where, path);
  for (const InterfaceEntry& e : i.entries()) {
    if (e.panel == nullptr) throw ValidationError("interface entry without panel in " + where, path);
    if (!reachable.count(e.panel)) {
      throw ValidationError("interface " + where + " references panel '" + e.panel->name() +
                                "' outside the component",
                            path);
    }
    if (!e.panel->is_known(e.edge)) {
      throw ValidationError("interface " + where + " references unknown edge " + std::to_string(e.edge) +
                                " of panel '" + e.panel->name() + "'",
                            path);
    }
  }
  i.resolve();
}

void validate_node(const Component& c) {
  const std::vector<const Panel*> panels = c.collect_panels();
  const std::set<const Panel*> reachable(panels.begin(), panels.end());
  if (c.is_panel()) {
    const auto& p = static_cast<const Panel&>(c);
    if (!p.edges().is_loop()) throw ValidationError("panel loop is not closed", c.path());
  }
  for (const auto& [name, i] : c.interfaces()) check_interface(i, reachable, "'" + name + "'", c.path());
  for (std::size_t k = 0; k < c.stitches().size(); ++k) {
    const std::string where = "of stitch " + std::to_string(k);
    check_interface(c.stitches()[k].a, reachable, where, c.path());
    check_interface(c.stitches()[k].b, reachable, where, c.path());
  }
  std::set<std::string> names;
  for (const auto& child : c.children()) {
    if (!names.insert(child->name()).second) {
      throw ValidationError("duplicate subcomponent name '" + child->name() + "'", c.path());
    }
    if (child->parent() != &c) throw ValidationError("broken parent link", child->path());
    validate_node(*child);
  }
}

}  // namespace

void validate(const Component& root) { validate_node(root); }

}  // namespace seamkit
