#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "seamkit/expr.hpp"
#include "seamkit/stable_json.hpp"

namespace seamkit {

// ---- Body -----------------------------------------------------------------

/// Measurements every body file must provide, cm.
const std::vector<std::string>& required_measurements();

/// Built-in derived measurements, name -> formula over base names.
const std::map<std::string, std::string>& default_derived_rules();

class BodyParams {
 public:
  /// `extra_rules` add to or override the built-in derived formulas.
  BodyParams(std::map<std::string, double> measurements,
             const std::map<std::string, std::string>& extra_rules = {});

  const std::map<std::string, double>& measurements() const { return measurements_; }
  const std::map<std::string, double>& derived() const { return derived_; }
  const std::map<std::string, std::string>& rules() const { return rules_; }
  /// Base or derived value; throws ParamError naming `body.<name>`.
  double get(const std::string& name) const;
  double operator[](const std::string& name) const { return get(name); }
  bool has(const std::string& name) const;

  /// Copy with one base measurement changed and derived values recomputed.
  BodyParams with(const std::string& name, double value) const;

  Json to_json() const;

 private:
  void derive();

  std::map<std::string, double> measurements_;
  std::map<std::string, std::string> rules_;
  std::map<std::string, double> derived_;
};

/// {"body": {...}, "derived": {name: formula}?}
BodyParams load_body(const Json& doc, const std::string& origin = "body");
BodyParams load_body_file(const std::string& path);

// ---- Design parameters ----------------------------------------------------

enum class ParamKind { numerical, integer, boolean, categorical };

const char* kind_name(ParamKind k);

using ParamValue = std::variant<double, bool, std::string>;

struct ParamDecl {
  std::string name;
  ParamKind kind = ParamKind::numerical;
  ParamValue value = 0.0;
  /// Numerical and integer parameters: bounds, possibly dependent.
  std::optional<Expr> lo;
  std::optional<Expr> hi;
  /// Categorical parameters: allowed values.
  std::vector<std::string> options;
  /// Explicit dependencies in addition to those read from the range.
  std::vector<std::string> depends_on;
  /// Excluded from random sampling (kept at `value`).
  bool fixed = false;
  std::string doc;
};

/// Declared parameters of one garment, in declaration order.
class DesignTemplate {
 public:
  DesignTemplate() = default;

  ParamDecl& add(ParamDecl d);
  ParamDecl& number(const std::string& name, double value, const std::string& lo, const std::string& hi,
                    const std::string& doc = {});
  ParamDecl& integer(const std::string& name, int value, const std::string& lo, const std::string& hi,
                     const std::string& doc = {});
  ParamDecl& boolean(const std::string& name, bool value, const std::string& doc = {});
  ParamDecl& choice(const std::string& name, const std::string& value, std::vector<std::string> options,
                    const std::string& doc = {});

  const std::vector<ParamDecl>& params() const { return params_; }
  bool has(const std::string& name) const;
  const ParamDecl& get(const std::string& name) const;
  ParamDecl& get(const std::string& name);

  /// Adds every parameter of `sub` under "<prefix>.", rewriting its
  /// references to sibling parameters accordingly.
  void merge_prefixed(const DesignTemplate& sub, const std::string& prefix);

  /// Applies a design document on top of the declarations. Only fields
  /// present are overridden; unknown parameter names are rejected.
  DesignTemplate overridden(const Json& design_doc, const std::string& origin = "design") const;

  Json to_json() const;

 private:
  std::vector<ParamDecl> params_;
};

/// Parses {"design": {name: {"type","value","range","depends_on"}}}.
DesignTemplate parse_design(const Json& doc, const std::string& origin = "design");

struct ParamWarning {
  std::string param;
  std::string message;
  bool operator==(const ParamWarning&) const = default;
};

struct ResolvedParam {
  std::string name;
  ParamKind kind = ParamKind::numerical;
  ParamValue value;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::string> options;
};

class ResolvedDesign {
 public:
  double num(const std::string& name) const;
  int integer(const std::string& name) const;
  bool flag(const std::string& name) const;
  const std::string& choice(const std::string& name) const;
  bool has(const std::string& name) const { return params_.count(name) > 0; }
  const ResolvedParam& get(const std::string& name) const;

  /// Parameters under "<prefix>." with the prefix stripped.
  ResolvedDesign sub(const std::string& prefix) const;
  /// Copy with one existing parameter's value replaced (same kind).
  ResolvedDesign with(const std::string& name, ParamValue value) const;

  const std::vector<std::string>& order() const { return order_; }
  const std::vector<ParamWarning>& warnings() const { return warnings_; }

  /// {"design": {name: {"type", "value", "range"|"options"}}}; feeding it
  /// back through parse_design/resolve_design reproduces the values.
  Json to_json() const;

 private:
  friend ResolvedDesign resolve_design(const DesignTemplate&, const BodyParams&);
  friend ResolvedDesign sample_design(const DesignTemplate&, const BodyParams&, std::uint64_t);
  std::map<std::string, ResolvedParam> params_;
  std::vector<std::string> order_;
  std::vector<ParamWarning> warnings_;
};

/// Dependency order of the template. Throws ParamError naming the cycle
/// (A -> B -> A) when there is one.
std::vector<std::string> dependency_order(const DesignTemplate& t);

/// Evaluates dependent ranges in dependency order and clamps out-of-range
/// values, recording a warning for each clamp.
ResolvedDesign resolve_design(const DesignTemplate& t, const BodyParams& body);

/// Draws every non-fixed parameter uniformly from its resolved range, in
/// dependency order. Deterministic for a given seed on every platform.
ResolvedDesign sample_design(const DesignTemplate& t, const BodyParams& body, std::uint64_t seed);

}  // namespace seamkit
