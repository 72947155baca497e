#include "seamkit/service.hpp"

#include <regex>

#include "seamkit/svg.hpp"

namespace seamkit {

Evaluation evaluate_garment(const GarmentEntry& entry, const BodyParams& body, const Json* design_doc,
                            std::optional<std::uint64_t> seed) {
  const DesignTemplate t = garment_template(entry, design_doc);
  Evaluation out;
  out.design = seed ? sample_design(t, body, *seed) : resolve_design(t, body);
  out.warnings = out.design.warnings();
  const std::unique_ptr<Component> garment = build_garment(entry, body, out.design);
  out.pattern = serialize(*garment);
  return out;
}

Json error_json(const Error& e) {
  Json j = {{"code", e.code()}, {"path", e.path()}, {"message", e.what()}};
  if (!e.residuals().empty()) {
    Json r = Json::object();
    for (const auto& [k, v] : e.residuals()) r[k] = v;
    j["residuals"] = r;
  }
  return j;
}

Json schema_json(const GarmentEntry& entry, const BodyParams& body, const Json* design_doc) {
  const DesignTemplate t = garment_template(entry, design_doc);
  const ResolvedDesign d = resolve_design(t, body);
  Json params = Json::array();
  for (const ParamDecl& decl : t.params()) {
    const ResolvedParam& r = d.get(decl.name);
    Json p = {{"name", decl.name}, {"type", kind_name(decl.kind)}, {"doc", decl.doc}, {"fixed", decl.fixed}};
    std::visit([&](const auto& v) { p["value"] = v; }, r.value);
    if (decl.kind == ParamKind::categorical) {
      p["options"] = r.options;
    } else if (decl.kind != ParamKind::boolean) {
      p["range"] = {r.lo, r.hi};
    }
    params.push_back(p);
  }
  Json warnings = Json::array();
  for (const ParamWarning& w : d.warnings()) warnings.push_back({{"param", w.param}, {"message", w.message}});
  return {{"garment", entry.name},
          {"role", entry.role},
          {"description", entry.description},
          {"body_requirements", required_measurements()},
          {"params", params},
          {"warnings", warnings}};
}

const BodyParams& reference_body() {
  static const BodyParams body({{"height", 168.0},
                                {"head_length", 22.0},
                                {"waist_line", 40.0},
                                {"hips_line", 20.0},
                                {"bust_line", 25.0},
                                {"waist", 70.0},
                                {"bust", 92.0},
                                {"hips", 98.0},
                                {"neck_w", 14.0},
                                {"shoulder_w", 38.0},
                                {"back_width", 34.0},
                                {"arm_length", 58.0}});
  return body;
}

namespace {

struct Request {
  BodyParams body = reference_body();
  std::optional<Json> design;
  std::optional<std::uint64_t> seed;
};

Request parse_request(const std::string& text) {
  Request r;
  if (text.empty()) return r;
  const Json j = parse_json(text, "request");
  if (!j.is_object()) throw ValidationError("request must be a JSON object", "request");
  for (const auto& [key, _] : j.items()) {
    if (key != "body" && key != "derived" && key != "design" && key != "seed") {
      throw ValidationError("unknown request field '" + key + "'", "request." + key);
    }
  }
  if (j.contains("body")) {
    Json doc = {{"body", j["body"]}};
    if (j.contains("derived")) doc["derived"] = j["derived"];
    r.body = load_body(doc, "request");
  }
  if (j.contains("design")) r.design = Json{{"design", j["design"]}};
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ValidationError("seed must be a non-negative integer", "request.seed");
    r.seed = j["seed"].get<std::uint64_t>();
  }
  return r;
}

HttpResponse json_response(int status, const Json& j) { return {status, dump_stable(j)}; }

int status_for(const Error& e) {
  if (e.code() == "solver") return 500;
  return 422;  // validation, param, format and geometry problems of the request
}

}  // namespace

HttpResponse Service::handle(const std::string& method, const std::string& path, const std::string& body) const {
  static const std::regex garment_route(R"(^/garments/([A-Za-z0-9_\-]+)/(schema|evaluate)$)");
  try {
    if (path == "/garments") {
      if (method != "GET") return json_response(405, {{"code", "method"}, {"path", path}, {"message", "use GET"}});
      Json list = Json::array();
      for (const GarmentEntry& e : registry_.entries()) {
        list.push_back({{"name", e.name}, {"role", e.role}, {"description", e.description}});
      }
      return json_response(200, {{"garments", list}});
    }
    std::smatch m;
    if (!std::regex_match(path, m, garment_route)) {
      return json_response(404, {{"code", "not_found"}, {"path", path}, {"message", "no such endpoint"}});
    }
    const std::string name = m[1];
    const std::string action = m[2];
    if (!registry_.has(name)) {
      ValidationError e("unknown garment '" + name + "'", name);
      try {
        registry_.get(name);  // message lists the registered names
      } catch (const ValidationError& listed) {
        e = listed;
      }
      Json j = error_json(e);
      j["code"] = "unknown_garment";
      return json_response(404, j);
    }
    const GarmentEntry& entry = registry_.get(name);
    if (action == "schema") {
      if (method != "GET" && method != "POST") {
        return json_response(405, {{"code", "method"}, {"path", path}, {"message", "use GET or POST"}});
      }
      const Request r = parse_request(method == "POST" ? body : std::string{});
      return json_response(200, schema_json(entry, r.body, r.design ? &*r.design : nullptr));
    }
    if (method != "POST") return json_response(405, {{"code", "method"}, {"path", path}, {"message", "use POST"}});
    const Request r = parse_request(body);
    const Evaluation ev = evaluate_garment(entry, r.body, r.design ? &*r.design : nullptr, r.seed);
    Json warnings = Json::array();
    for (const ParamWarning& w : ev.warnings) warnings.push_back({{"param", w.param}, {"message", w.message}});
    return json_response(200, {{"pattern", to_json(ev.pattern)}, {"svg", render_svg(ev.pattern)}, {"warnings", warnings}});
  } catch (const Error& e) {
    return json_response(status_for(e), error_json(e));
  } catch (const std::exception& e) {
    return json_response(500, {{"code", "internal"}, {"path", path}, {"message", e.what()}});
  }
}

}  // namespace seamkit
