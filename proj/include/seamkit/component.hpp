#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "seamkit/edge_sequence.hpp"
#include "seamkit/geometry.hpp"
#include "seamkit/solvers.hpp"

namespace seamkit {

class Component;
class Panel;

/// Rigid placement: world = rotation * local + translation.
struct Placement {
  Quat rotation = Quat::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  /// this ∘ child.
  Placement operator*(const Placement& child) const;
  Placement inverse() const;

  /// Extrinsic x, then y, then z rotations (R = Rz Ry Rx), degrees.
  static Quat from_euler_deg(double rx, double ry, double rz);
  std::array<double, 3> euler_deg() const;
};

/// Stable identifier of an edge within one panel. Survives loop reversal;
/// split edges keep their id as an alias for their pieces.
using EdgeId = std::uint32_t;

struct InterfaceEntry {
  Panel* panel = nullptr;
  EdgeId edge = 0;
  /// Edge runs against the connection order, relative to the edge's
  /// direction when the id was issued.
  bool reverse = false;
  bool operator==(const InterfaceEntry&) const = default;
};

/// An entry after following splits down to a current loop edge.
struct ResolvedEntry {
  Panel* panel = nullptr;
  EdgeId edge = 0;
  bool reverse = false;  // relative to the id's original direction
  std::size_t index = 0;  // position in the panel loop
  bool traversal_reversed = false;  // current loop direction runs against connection order
};

/// Ordered edges of one or more panels forming a connection surface.
class Interface {
 public:
  Interface() = default;
  explicit Interface(std::vector<InterfaceEntry> entries, std::string role = {})
      : entries_(std::move(entries)), role_(std::move(role)) {}

  const std::vector<InterfaceEntry>& entries() const { return entries_; }
  std::vector<InterfaceEntry>& entries() { return entries_; }
  const std::string& role() const { return role_; }
  bool empty() const { return entries_.empty(); }

  /// Opposite connection order.
  Interface reversed() const;
  /// Entries of `this` followed by entries of `other`.
  Interface concat(const Interface& other) const;

  std::vector<ResolvedEntry> resolve() const;
  double length() const;
  /// World-frame centre of mass: length-weighted edge midpoints.
  Vec3 com() const;

  bool operator==(const Interface&) const = default;

 private:
  std::vector<InterfaceEntry> entries_;
  std::string role_;
};

struct StitchingRule {
  Interface a;
  Interface b;
};

/// Maps panels of an original hierarchy to their copies.
using PanelMap = std::unordered_map<const Panel*, Panel*>;

/// Node of the garment hierarchy. Owns its subcomponents.
class Component {
 public:
  explicit Component(std::string name);
  virtual ~Component() = default;
  Component(const Component&) = delete;
  Component& operator=(const Component&) = delete;

  const std::string& name() const { return name_; }
  void rename(std::string name) { name_ = std::move(name); }
  Component* parent() const { return parent_; }
  /// Dot-separated names from the root.
  std::string path() const;

  virtual bool is_panel() const { return false; }

  // Placement. Changing it re-orients descendant panel normals unless
  // auto orientation has been switched off on the root.
  const Placement& placement() const { return placement_; }
  Placement world_placement() const;
  void set_placement(const Placement& p);
  void translate_by(const Vec3& v);
  /// Rotates about the parent's origin: local = r ∘ local.
  void rotate_by(const Quat& r);
  void set_auto_orient(bool on);
  bool auto_orient() const;

  // Hierarchy.
  template <class T>
  T& add(std::unique_ptr<T> child) {
    T& ref = *child;
    adopt(std::move(child));
    return ref;
  }
  const std::vector<std::unique_ptr<Component>>& children() const { return children_; }
  Component& child(const std::string& name) const;
  bool has_child(const std::string& name) const;
  /// Detaches and returns a child.
  std::unique_ptr<Component> release(const std::string& name);

  // Interfaces and stitches.
  void set_interface(const std::string& name, Interface i);
  const Interface& interface(const std::string& name) const;
  bool has_interface(const std::string& name) const;
  const std::map<std::string, Interface>& interfaces() const { return interfaces_; }
  void stitch(const Interface& a, const Interface& b);
  const std::vector<StitchingRule>& stitches() const { return stitches_; }

  /// Panels of the subtree, depth first in declaration order.
  std::vector<Panel*> collect_panels();
  std::vector<const Panel*> collect_panels() const;

  /// Length-weighted world COM over all panel edges of the subtree.
  Vec3 com() const;

  /// Deep copy. References to panels inside the subtree are redirected to
  /// the copies; references to outside panels are kept.
  std::unique_ptr<Component> clone() const;
  /// Same as clone(), also reporting the panel mapping.
  std::unique_ptr<Component> clone(PanelMap& map) const;

 protected:
  virtual std::unique_ptr<Component> clone_node() const;
  void copy_base_into(Component& out) const;
  void placement_changed();
  virtual void on_world_changed();

 private:
  void adopt(std::unique_ptr<Component> child);
  std::unique_ptr<Component> clone_tree(PanelMap& map) const;
  void remap(const PanelMap& map);

  std::string name_;
  Component* parent_ = nullptr;
  Placement placement_;
  std::optional<bool> auto_orient_;  // unset: inherit from parent (default on)
  std::vector<std::unique_ptr<Component>> children_;
  std::map<std::string, Interface> interfaces_;
  std::vector<StitchingRule> stitches_;
};

/// One fabric piece: a closed loop of directed edges.
class Panel : public Component {
 public:
  Panel(std::string name, const EdgeSequence& loop);

  bool is_panel() const override { return true; }

  EdgeSequence edges() const;
  std::size_t size() const { return slots_.size(); }
  const Edge& edge_at(std::size_t index) const;
  EdgeId id_at(std::size_t index) const;
  /// Loop position of a current (unsplit) edge.
  std::size_t index_of(EdgeId id) const;
  bool is_current(EdgeId id) const;
  bool is_known(EdgeId id) const;
  const Edge& edge(EdgeId id) const { return edge_at(index_of(id)); }
  /// Whether the loop has been reversed since the current edge `id` was issued.
  bool flipped(EdgeId id) const;
  /// Current pieces of `id` in its original direction (a single entry when
  /// never split; may be empty if every piece was cut away).
  std::vector<EdgeId> pieces(EdgeId id) const;

  /// Interface over the given ids, connection order = listed order.
  Interface interface_of(std::initializer_list<EdgeId> ids, bool reverse = false) const;
  Interface interface_of(const std::vector<EdgeId>& ids, bool reverse = false) const;

  /// Splits a current edge at arc-length fractions measured along its
  /// current loop direction. Returns the piece ids in loop order.
  std::vector<EdgeId> subdivide(EdgeId id, std::span<const double> fractions);

  /// Inserts `shape` into this edge (see project_on_edge). Returns the ids
  /// of the inserted shape edges.
  std::vector<EdgeId> project_on_edge(EdgeId id, const EdgeSequence& shape, double t,
                                      bool reflect, SpliceResult* report = nullptr);
  /// Cuts the corner where edge `first` ends (see project_on_corner).
  std::vector<EdgeId> project_on_corner(EdgeId first, const EdgeSequence& shape, double rotation,
                                        SpliceResult* report = nullptr);

  /// Rigidly moves or reflects the 2D geometry of the whole loop.
  void transform_geometry(const std::function<EdgeSequence(const EdgeSequence&)>& f);
  void reverse_loop();

  /// Local-frame COM of the extremal-point polyline.
  Point2 local_com() const;
  /// +1 when the loop runs counterclockwise in the panel frame, else -1.
  int winding() const;
  /// Panel normal in world coordinates.
  Vec3 normal() const;
  /// Reverses the loop if needed so the normal points away from
  /// `body_center`; without one, away from the vertical axis at the
  /// panel's height. Returns true when the loop was reversed.
  bool orient_normal(std::optional<Vec3> body_center = std::nullopt);

  Vec3 to_world(Point2 p) const;

  /// Appends the current edges `id` resolves to, in connection order.
  void resolve_into(EdgeId id, bool reverse, std::vector<ResolvedEntry>& out);

  void add_internal_stitch(const Interface& a, const Interface& b) { stitch(a, b); }

 protected:
  std::unique_ptr<Component> clone_node() const override;
  void on_world_changed() override;

 private:
  struct Slot {
    EdgeId id;
    Edge edge;
    bool flipped;
  };

  // Replaces slots [first, first+count) by `edges`. parents[i] is the offset
  // (within the replaced run) of the slot edge i derives from, or nullopt
  // for new geometry. Returns the new ids.
  std::vector<EdgeId> replace_run(std::size_t first, std::size_t count, const std::vector<Edge>& edges,
                                  const std::vector<std::optional<std::size_t>>& parents);
  EdgeId issue_id() { return next_id_++; }
  void rotate_start(std::size_t new_first);
  void check_loop() const;

  std::vector<Slot> slots_;
  EdgeId next_id_ = 0;
  std::map<EdgeId, std::vector<EdgeId>> splits_;  // children in original direction
};

// Smart copies.

/// Deep copy reflected over the vertical plane x = axis_x of the
/// component's parent frame. Interfaces keep their names.
std::unique_ptr<Component> mirror(const Component& c, double axis_x, std::string new_name);

/// n copies of `c`, copy k translated by k * step, named <name>_<k>.
std::unique_ptr<Component> distribute_line(const Component& c, int n, const Vec3& step,
                                           std::string parent_name);
/// n copies of `c`, copy k rotated by k * 360/n degrees about the vertical
/// (y) axis, after an optional base rotation applied to every copy.
std::unique_ptr<Component> distribute_circle(const Component& c, int n, std::string parent_name,
                                             double base_angle_deg = 0.0);

/// Translates `moved` so its interface COM meets the target's, then backs
/// it off by `gap` along the direction from its interface COM to its own COM.
void place_by_interface(Component& moved, const Interface& moved_if, const Interface& target_if,
                        double gap = 0.0);

/// Throws ValidationError naming the offending component.
void validate(const Component& root);

}  // namespace seamkit
