#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seamkit/error.hpp"
#include "seamkit/flatten.hpp"
#include "seamkit/garments.hpp"
#include "seamkit/params.hpp"

namespace seamkit {

/// One garment evaluation: the design it used and the flat pattern.
struct Evaluation {
  ResolvedDesign design;
  FlatPattern pattern;
  std::vector<ParamWarning> warnings;
};

/// Resolves the design (declared values, a design document on top, or a
/// random sample when `seed` is set), builds, validates and serializes.
Evaluation evaluate_garment(const GarmentEntry& entry, const BodyParams& body, const Json* design_doc,
                            std::optional<std::uint64_t> seed = std::nullopt);

/// {"code", "path", "message", "residuals"?}
Json error_json(const Error& e);

/// Parameter schema with ranges resolved against `body`.
Json schema_json(const GarmentEntry& entry, const BodyParams& body, const Json* design_doc);

/// The body used when a request does not carry one.
const BodyParams& reference_body();

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Stateless request handler behind the HTTP server.
///
///   GET  /garments
///   GET  /garments/{name}/schema
///   POST /garments/{name}/schema     {"body"?, "derived"?, "design"?}
///   POST /garments/{name}/evaluate   {"body"?, "derived"?, "design"?, "seed"?}
class Service {
 public:
  explicit Service(const GarmentRegistry& registry = GarmentRegistry::builtin()) : registry_(registry) {}

  HttpResponse handle(const std::string& method, const std::string& path, const std::string& body) const;

 private:
  const GarmentRegistry& registry_;
};

}  // namespace seamkit
