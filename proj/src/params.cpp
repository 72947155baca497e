#include "seamkit/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>

#include "seamkit/error.hpp"

namespace seamkit {

namespace {

constexpr const char* kBodyPrefix = "body.";

bool is_body_ref(const std::string& name) { return name.rfind(kBodyPrefix, 0) == 0; }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

// ---- Body -----------------------------------------------------------------

const std::vector<std::string>& required_measurements() {
  static const std::vector<std::string> names = {
      "height", "head_length", "waist_line", "hips_line", "bust_line", "waist",     "bust",
      "hips",   "neck_w",      "shoulder_w", "back_width", "arm_length"};
  return names;
}

const std::map<std::string, std::string>& default_derived_rules() {
  static const std::map<std::string, std::string> rules = {
      {"waist_level", "height - head_length - waist_line"},
      {"hip_level", "waist_level - hips_line"},
      {"leg_length", "hip_level"},
  };
  return rules;
}

BodyParams::BodyParams(std::map<std::string, double> measurements,
                       const std::map<std::string, std::string>& extra_rules)
    : measurements_(std::move(measurements)), rules_(default_derived_rules()) {
  for (const auto& [name, f] : extra_rules) rules_[name] = f;
  for (const std::string& name : required_measurements()) {
    auto it = measurements_.find(name);
    if (it == measurements_.end()) throw ParamError("missing body measurement '" + name + "'", "body." + name);
  }
  for (const auto& [name, v] : measurements_) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw ParamError("body measurement '" + name + "' must be positive", "body." + name);
    }
  }
  derive();
}

void BodyParams::derive() {
  derived_.clear();
  std::set<std::string> active;
  std::vector<std::string> stack;
  std::function<double(const std::string&)> value = [&](const std::string& raw) -> double {
    const std::string name = is_body_ref(raw) ? raw.substr(5) : raw;
    if (auto m = measurements_.find(name); m != measurements_.end()) return m->second;
    if (auto d = derived_.find(name); d != derived_.end()) return d->second;
    auto r = rules_.find(name);
    if (r == rules_.end()) throw ParamError("derived rule references unknown measurement '" + name + "'", "body." + name);
    if (active.count(name)) {
      std::string cycle;
      auto from = std::find(stack.begin(), stack.end(), name);
      for (auto it = from; it != stack.end(); ++it) cycle += *it + " -> ";
      throw ParamError("cyclic derived measurements: " + cycle + name, "body." + name);
    }
    active.insert(name);
    stack.push_back(name);
    const double v = Expr::parse(r->second).eval(value);
    stack.pop_back();
    active.erase(name);
    derived_[name] = v;
    return v;
  };
  for (const auto& [name, f] : rules_) {
    if (measurements_.count(name)) continue;  // a measured value wins over its formula
    value(name);
  }
}

double BodyParams::get(const std::string& raw) const {
  const std::string name = is_body_ref(raw) ? raw.substr(5) : raw;
  if (auto m = measurements_.find(name); m != measurements_.end()) return m->second;
  if (auto d = derived_.find(name); d != derived_.end()) return d->second;
  throw ParamError("unknown body measurement '" + name + "'", "body." + name);
}

bool BodyParams::has(const std::string& raw) const {
  const std::string name = is_body_ref(raw) ? raw.substr(5) : raw;
  return measurements_.count(name) || derived_.count(name);
}

BodyParams BodyParams::with(const std::string& name, double value) const {
  std::map<std::string, double> m = measurements_;
  m[name] = value;
  return BodyParams(std::move(m), rules_);
}

Json BodyParams::to_json() const {
  Json body = Json::object();
  for (const auto& [k, v] : measurements_) body[k] = v;
  Json derived = Json::object();
  for (const auto& [k, v] : derived_) derived[k] = v;
  return {{"body", body}, {"derived_values", derived}};
}

BodyParams load_body(const Json& doc, const std::string& origin) {
  if (!doc.is_object()) throw ParamError(origin + ": body document must be an object", origin);
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "body" && it.key() != "derived") {
      throw ParamError(origin + ": unknown field '" + it.key() + "'", it.key());
    }
  }
  auto body = doc.find("body");
  if (body == doc.end() || !body->is_object()) throw ParamError(origin + ": missing \"body\" object", "body");
  std::map<std::string, double> m;
  for (auto it = body->begin(); it != body->end(); ++it) {
    if (!it->is_number()) throw ParamError(origin + ": measurement '" + it.key() + "' must be a number", "body." + it.key());
    m[it.key()] = it->get<double>();
  }
  std::map<std::string, std::string> rules;
  if (auto d = doc.find("derived"); d != doc.end()) {
    if (!d->is_object()) throw ParamError(origin + ": \"derived\" must be an object", "derived");
    for (auto it = d->begin(); it != d->end(); ++it) {
      if (!it->is_string()) throw ParamError(origin + ": derived rule '" + it.key() + "' must be a string", "derived." + it.key());
      rules[it.key()] = it->get<std::string>();
    }
  }
  return BodyParams(std::move(m), rules);
}

BodyParams load_body_file(const std::string& path) { return load_body(read_json_file(path), path); }

// ---- Templates ------------------------------------------------------------

const char* kind_name(ParamKind k) {
  switch (k) {
    case ParamKind::numerical: return "numerical";
    case ParamKind::integer: return "integer";
    case ParamKind::boolean: return "boolean";
    case ParamKind::categorical: return "categorical";
  }
  return "?";
}

namespace {

ParamKind parse_kind(const std::string& s, const std::string& where) {
  if (s == "numerical") return ParamKind::numerical;
  if (s == "integer") return ParamKind::integer;
  if (s == "boolean") return ParamKind::boolean;
  if (s == "categorical") return ParamKind::categorical;
  throw ParamError("unknown parameter type '" + s + "'", where);
}

Expr bound_expr(const Json& j, const std::string& where) {
  if (j.is_number()) return Expr::constant(j.get<double>());
  if (j.is_string()) return Expr::parse(j.get<std::string>());
  throw ParamError("range bounds must be numbers or expressions", where);
}

Json bound_json(const Expr& e) {
  if (e.is_constant()) return e.eval([](const std::string&) { return 0.0; });
  return e.str();
}

Json value_json(const ParamValue& v, ParamKind k) {
  if (k == ParamKind::integer) return static_cast<long long>(std::llround(std::get<double>(v)));
  return std::visit([](const auto& x) { return Json(x); }, v);
}

void apply_fields(ParamDecl& d, const Json& spec, const std::string& where) {
  if (!spec.is_object()) throw ParamError("parameter declaration must be an object", where);
  for (auto it = spec.begin(); it != spec.end(); ++it) {
    static const std::set<std::string> allowed = {"type", "value", "range", "depends_on", "fixed", "doc"};
    if (!allowed.count(it.key())) throw ParamError("unknown field '" + it.key() + "'", where + "." + it.key());
  }
  if (auto t = spec.find("type"); t != spec.end()) {
    if (!t->is_string()) throw ParamError("type must be a string", where + ".type");
    d.kind = parse_kind(t->get<std::string>(), where + ".type");
  }
  if (auto r = spec.find("range"); r != spec.end()) {
    if (!r->is_array()) throw ParamError("range must be an array", where + ".range");
    if (d.kind == ParamKind::categorical) {
      d.options.clear();
      for (const Json& o : *r) {
        if (!o.is_string()) throw ParamError("categorical options must be strings", where + ".range");
        d.options.push_back(o.get<std::string>());
      }
      if (d.options.empty()) throw ParamError("categorical parameter without options", where + ".range");
    } else if (d.kind != ParamKind::boolean) {
      if (r->size() != 2) throw ParamError("range must be [lo, hi]", where + ".range");
      d.lo = bound_expr((*r)[0], where + ".range");
      d.hi = bound_expr((*r)[1], where + ".range");
    }
  }
  if (auto v = spec.find("value"); v != spec.end()) {
    switch (d.kind) {
      case ParamKind::numerical:
      case ParamKind::integer:
        if (!v->is_number()) throw ParamError("value must be a number", where + ".value");
        d.value = v->get<double>();
        break;
      case ParamKind::boolean:
        if (!v->is_boolean()) throw ParamError("value must be a boolean", where + ".value");
        d.value = v->get<bool>();
        break;
      case ParamKind::categorical:
        if (!v->is_string()) throw ParamError("value must be a string", where + ".value");
        d.value = v->get<std::string>();
        break;
    }
  }
  if (auto dep = spec.find("depends_on"); dep != spec.end()) {
    if (!dep->is_array()) throw ParamError("depends_on must be an array of names", where + ".depends_on");
    d.depends_on.clear();
    for (const Json& n : *dep) {
      if (!n.is_string()) throw ParamError("depends_on must be an array of names", where + ".depends_on");
      d.depends_on.push_back(n.get<std::string>());
    }
  }
  if (auto f = spec.find("fixed"); f != spec.end()) {
    if (!f->is_boolean()) throw ParamError("fixed must be a boolean", where + ".fixed");
    d.fixed = f->get<bool>();
  }
  if (auto doc = spec.find("doc"); doc != spec.end() && doc->is_string()) d.doc = doc->get<std::string>();
  // Keep the value's type consistent with the (possibly changed) kind.
  const bool numeric = d.kind == ParamKind::numerical || d.kind == ParamKind::integer;
  if (numeric != std::holds_alternative<double>(d.value) ||
      (d.kind == ParamKind::boolean) != std::holds_alternative<bool>(d.value) ||
      (d.kind == ParamKind::categorical) != std::holds_alternative<std::string>(d.value)) {
    throw ParamError("value does not match parameter type " + std::string(kind_name(d.kind)), where + ".value");
  }
}

const Json& design_body(const Json& doc, const std::string& origin) {
  if (!doc.is_object()) throw ParamError(origin + ": design document must be an object", origin);
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "design") throw ParamError(origin + ": unknown field '" + it.key() + "'", it.key());
  }
  auto d = doc.find("design");
  if (d == doc.end() || !d->is_object()) throw ParamError(origin + ": missing \"design\" object", "design");
  return *d;
}

}  // namespace

ParamDecl& DesignTemplate::add(ParamDecl d) {
  if (has(d.name)) throw ParamError("duplicate parameter '" + d.name + "'", d.name);
  params_.push_back(std::move(d));
  return params_.back();
}

ParamDecl& DesignTemplate::number(const std::string& name, double value, const std::string& lo,
                                  const std::string& hi, const std::string& doc) {
  ParamDecl d;
  d.name = name;
  d.value = value;
  d.lo = Expr::parse(lo);
  d.hi = Expr::parse(hi);
  d.doc = doc;
  return add(std::move(d));
}

ParamDecl& DesignTemplate::integer(const std::string& name, int value, const std::string& lo,
                                   const std::string& hi, const std::string& doc) {
  ParamDecl& d = number(name, value, lo, hi, doc);
  d.kind = ParamKind::integer;
  return d;
}

ParamDecl& DesignTemplate::boolean(const std::string& name, bool value, const std::string& doc) {
  ParamDecl d;
  d.name = name;
  d.kind = ParamKind::boolean;
  d.value = value;
  d.doc = doc;
  return add(std::move(d));
}

ParamDecl& DesignTemplate::choice(const std::string& name, const std::string& value,
                                  std::vector<std::string> options, const std::string& doc) {
  ParamDecl d;
  d.name = name;
  d.kind = ParamKind::categorical;
  d.value = value;
  d.options = std::move(options);
  d.doc = doc;
  return add(std::move(d));
}

bool DesignTemplate::has(const std::string& name) const {
  return std::any_of(params_.begin(), params_.end(), [&](const ParamDecl& d) { return d.name == name; });
}

const ParamDecl& DesignTemplate::get(const std::string& name) const {
  for (const ParamDecl& d : params_) {
    if (d.name == name) return d;
  }
  throw ParamError("unknown design parameter '" + name + "'", name);
}

ParamDecl& DesignTemplate::get(const std::string& name) {
  return const_cast<ParamDecl&>(static_cast<const DesignTemplate&>(*this).get(name));
}

void DesignTemplate::merge_prefixed(const DesignTemplate& sub, const std::string& prefix) {
  const auto rename = [&](const std::string& n) { return is_body_ref(n) ? n : prefix + "." + n; };
  for (ParamDecl d : sub.params_) {
    d.name = prefix + "." + d.name;
    if (d.lo) d.lo = d.lo->renamed(rename);
    if (d.hi) d.hi = d.hi->renamed(rename);
    for (std::string& dep : d.depends_on) dep = rename(dep);
    add(std::move(d));
  }
}

DesignTemplate DesignTemplate::overridden(const Json& design_doc, const std::string& origin) const {
  DesignTemplate out = *this;
  const Json& d = design_body(design_doc, origin);
  for (auto it = d.begin(); it != d.end(); ++it) {
    if (!out.has(it.key())) throw ParamError(origin + ": unknown design parameter '" + it.key() + "'", it.key());
    apply_fields(out.get(it.key()), *it, it.key());
  }
  return out;
}

Json DesignTemplate::to_json() const {
  Json out = Json::object();
  for (const ParamDecl& d : params_) {
    Json p = {{"type", kind_name(d.kind)}, {"value", value_json(d.value, d.kind)}};
    if (d.kind == ParamKind::categorical) {
      p["range"] = d.options;
    } else if (d.lo && d.hi) {
      p["range"] = Json::array({bound_json(*d.lo), bound_json(*d.hi)});
    }
    if (!d.depends_on.empty()) p["depends_on"] = d.depends_on;
    if (d.fixed) p["fixed"] = true;
    if (!d.doc.empty()) p["doc"] = d.doc;
    out[d.name] = p;
  }
  return {{"design", out}};
}

DesignTemplate parse_design(const Json& doc, const std::string& origin) {
  DesignTemplate t;
  const Json& d = design_body(doc, origin);
  for (auto it = d.begin(); it != d.end(); ++it) {
    ParamDecl p;
    p.name = it.key();
    // Type first so the value is read with the right kind.
    if (auto ty = it->find("type"); ty != it->end() && ty->is_string()) {
      p.kind = parse_kind(ty->get<std::string>(), it.key() + ".type");
      if (p.kind == ParamKind::boolean) p.value = false;
      if (p.kind == ParamKind::categorical) p.value = std::string();
    }
    if (!it->contains("value")) throw ParamError(origin + ": parameter '" + it.key() + "' has no value", it.key());
    apply_fields(p, *it, it.key());
    t.add(std::move(p));
  }
  return t;
}

// ---- Resolution -----------------------------------------------------------

namespace {

std::vector<std::string> deps_of(const ParamDecl& d, const DesignTemplate& t) {
  std::vector<std::string> out = d.depends_on;
  for (const std::optional<Expr>* e : {&d.lo, &d.hi}) {
    if (!*e) continue;
    for (const std::string& r : (*e)->references()) {
      if (!is_body_ref(r) && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    }
  }
  for (const std::string& r : out) {
    if (!t.has(r)) throw ParamError("parameter '" + d.name + "' depends on unknown parameter '" + r + "'", d.name);
  }
  return out;
}

}  // namespace

std::vector<std::string> dependency_order(const DesignTemplate& t) {
  std::map<std::string, std::vector<std::string>> deps;
  for (const ParamDecl& d : t.params()) deps[d.name] = deps_of(d, t);
  std::vector<std::string> order;
  std::set<std::string> done;
  while (order.size() < t.params().size()) {
    bool progressed = false;
    for (const ParamDecl& d : t.params()) {
      if (done.count(d.name)) continue;
      const auto& ds = deps[d.name];
      if (std::all_of(ds.begin(), ds.end(), [&](const std::string& x) { return done.count(x) > 0; })) {
        order.push_back(d.name);
        done.insert(d.name);
        progressed = true;
        break;
      }
    }
    if (progressed) continue;
    // Walk unresolved dependencies until a name repeats.
    std::string cur;
    for (const ParamDecl& d : t.params()) {
      if (!done.count(d.name)) {
        cur = d.name;
        break;
      }
    }
    std::vector<std::string> walk;
    while (std::find(walk.begin(), walk.end(), cur) == walk.end()) {
      walk.push_back(cur);
      for (const std::string& x : deps[cur]) {
        if (!done.count(x)) {
          cur = x;
          break;
        }
      }
    }
    std::string msg;
    for (auto it = std::find(walk.begin(), walk.end(), cur); it != walk.end(); ++it) msg += *it + " -> ";
    throw ParamError("dependency cycle: " + msg + cur, cur);
  }
  return order;
}

namespace {

// Uniform in [0,1) from the top 53 bits; identical on every standard library.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <class Choose>
void run(const DesignTemplate& t, const BodyParams& body, Choose&& choose,
         std::map<std::string, ResolvedParam>& params) {
  const std::vector<std::string> order = dependency_order(t);
  const auto lookup = [&](const std::string& name) -> double {
    if (is_body_ref(name)) return body.get(name);
    auto it = params.find(name);
    if (it == params.end()) throw ParamError("parameter '" + name + "' is not resolved yet", name);
    const ParamValue& v = it->second.value;
    if (std::holds_alternative<double>(v)) return std::get<double>(v);
    if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? 1.0 : 0.0;
    throw ParamError("categorical parameter '" + name + "' used in a numeric expression", name);
  };
  for (const std::string& name : order) {
    const ParamDecl& d = t.get(name);
    ResolvedParam r;
    r.name = name;
    r.kind = d.kind;
    r.options = d.options;
    try {
      switch (d.kind) {
        case ParamKind::numerical:
        case ParamKind::integer: {
          double lo = d.lo ? d.lo->eval(lookup) : -HUGE_VAL;
          double hi = d.hi ? d.hi->eval(lookup) : HUGE_VAL;
          if (d.kind == ParamKind::integer) {
            lo = std::ceil(lo - 1e-9);
            hi = std::floor(hi + 1e-9);
          }
          if (lo > hi + 1e-12) {
            throw ParamError("empty range [" + fmt(lo) + ", " + fmt(hi) + "] for '" + name + "'", name);
          }
          r.lo = lo;
          r.hi = hi;
          break;
        }
        case ParamKind::categorical:
          if (d.options.empty()) throw ParamError("categorical parameter '" + name + "' has no options", name);
          break;
        case ParamKind::boolean: break;
      }
      r.value = choose(d, r);
    } catch (Error& e) {
      if (e.path().empty()) e.set_path(name);
      throw;
    }
    params[name] = r;
  }
}

ParamValue clamp_value(const ParamDecl& d, const ResolvedParam& r, std::vector<ParamWarning>& warnings) {
  switch (d.kind) {
    case ParamKind::numerical:
    case ParamKind::integer: {
      double v = std::get<double>(d.value);
      if (d.kind == ParamKind::integer) v = static_cast<double>(std::llround(v));
      if (v < r.lo || v > r.hi) {
        const double c = std::clamp(v, r.lo, r.hi);
        warnings.push_back({d.name, "value " + fmt(v) + " of '" + d.name + "' clamped to " + fmt(c) + " (range [" +
                                        fmt(r.lo) + ", " + fmt(r.hi) + "])"});
        v = c;
      }
      return v;
    }
    case ParamKind::boolean: return std::get<bool>(d.value);
    case ParamKind::categorical: {
      const std::string& v = std::get<std::string>(d.value);
      if (std::find(d.options.begin(), d.options.end(), v) == d.options.end()) {
        std::string allowed;
        for (const std::string& o : d.options) allowed += (allowed.empty() ? "" : ", ") + o;
        throw ParamError("unknown value '" + v + "' for '" + d.name + "' (allowed: " + allowed + ")", d.name);
      }
      return v;
    }
  }
  return d.value;
}

}  // namespace

ResolvedDesign resolve_design(const DesignTemplate& t, const BodyParams& body) {
  ResolvedDesign out;
  run(
      t, body,
      [&](const ParamDecl& d, const ResolvedParam& r) { return clamp_value(d, r, out.warnings_); },
      out.params_);
  out.order_ = dependency_order(t);
  return out;
}

ResolvedDesign sample_design(const DesignTemplate& t, const BodyParams& body, std::uint64_t seed) {
  ResolvedDesign out;
  std::mt19937_64 rng(seed);
  run(
      t, body,
      [&](const ParamDecl& d, const ResolvedParam& r) -> ParamValue {
        if (d.fixed) return clamp_value(d, r, out.warnings_);
        const double u = uniform01(rng);
        switch (d.kind) {
          case ParamKind::numerical:
            if (!std::isfinite(r.lo) || !std::isfinite(r.hi)) return clamp_value(d, r, out.warnings_);
            return r.lo + u * (r.hi - r.lo);
          case ParamKind::integer: {
            if (!std::isfinite(r.lo) || !std::isfinite(r.hi)) return clamp_value(d, r, out.warnings_);
            const double n = r.hi - r.lo + 1.0;
            return r.lo + std::min(std::floor(u * n), n - 1.0);
          }
          case ParamKind::boolean: return u < 0.5;
          case ParamKind::categorical: {
            const std::size_t n = d.options.size();
            return d.options[std::min(static_cast<std::size_t>(u * static_cast<double>(n)), n - 1)];
          }
        }
        return d.value;
      },
      out.params_);
  out.order_ = dependency_order(t);
  return out;
}

// ---- ResolvedDesign -------------------------------------------------------

const ResolvedParam& ResolvedDesign::get(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw ParamError("unknown design parameter '" + name + "'", name);
  return it->second;
}

double ResolvedDesign::num(const std::string& name) const {
  const ResolvedParam& p = get(name);
  if (!std::holds_alternative<double>(p.value)) throw ParamError("parameter '" + name + "' is not numeric", name);
  return std::get<double>(p.value);
}

int ResolvedDesign::integer(const std::string& name) const { return static_cast<int>(std::lround(num(name))); }

bool ResolvedDesign::flag(const std::string& name) const {
  const ResolvedParam& p = get(name);
  if (!std::holds_alternative<bool>(p.value)) throw ParamError("parameter '" + name + "' is not boolean", name);
  return std::get<bool>(p.value);
}

const std::string& ResolvedDesign::choice(const std::string& name) const {
  const ResolvedParam& p = get(name);
  if (!std::holds_alternative<std::string>(p.value)) throw ParamError("parameter '" + name + "' is not categorical", name);
  return std::get<std::string>(p.value);
}

ResolvedDesign ResolvedDesign::sub(const std::string& prefix) const {
  ResolvedDesign out;
  const std::string head = prefix + ".";
  for (const std::string& name : order_) {
    if (name.rfind(head, 0) != 0) continue;
    ResolvedParam p = params_.at(name);
    p.name = name.substr(head.size());
    out.order_.push_back(p.name);
    out.params_[p.name] = std::move(p);
  }
  for (const ParamWarning& w : warnings_) {
    if (w.param.rfind(head, 0) == 0) out.warnings_.push_back({w.param.substr(head.size()), w.message});
  }
  return out;
}

ResolvedDesign ResolvedDesign::with(const std::string& name, ParamValue value) const {
  ResolvedDesign out = *this;
  ResolvedParam& p = out.params_.at(get(name).name);
  if (p.value.index() != value.index()) throw ParamError("type mismatch when overriding '" + name + "'", name);
  p.value = std::move(value);
  return out;
}

Json ResolvedDesign::to_json() const {
  Json d = Json::object();
  for (const auto& [name, p] : params_) {
    Json e = {{"type", kind_name(p.kind)}, {"value", value_json(p.value, p.kind)}};
    if (p.kind == ParamKind::categorical) {
      e["range"] = p.options;
    } else if (p.kind != ParamKind::boolean && std::isfinite(p.lo) && std::isfinite(p.hi)) {
      e["range"] = Json::array({p.lo, p.hi});
    }
    d[name] = e;
  }
  return {{"design", d}};
}

}  // namespace seamkit
