// Command line front end: evaluate or sample garments, inspect the registry,
// run the HTTP service.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "http_server.hpp"
#include "seamkit/service.hpp"
#include "seamkit/svg.hpp"

namespace fs = std::filesystem;
using namespace seamkit;

namespace {

// Exit codes.
constexpr int kUnknownGarment = 2;
constexpr int kInvalidInput = 3;
constexpr int kSolverFailure = 4;
constexpr int kInternal = 1;

int report(const Error& e) {
  std::cerr << dump_stable(Json{{"error", error_json(e)}});
  if (e.code() == "solver") return kSolverFailure;
  return kInvalidInput;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string(), path.string());
  out << text;
}

void write_outputs(const fs::path& dir, const Evaluation& ev, bool svg) {
  fs::create_directories(dir);
  write_text(dir / "pattern.json", pattern_to_string(ev.pattern));
  write_text(dir / "design.json", dump_stable(ev.design.to_json()));
  if (svg) write_text(dir / "pattern.svg", render_svg(ev.pattern));
  for (const ParamWarning& w : ev.warnings) std::cerr << "warning: " << w.message << "\n";
}

struct EvalArgs {
  std::string garment;
  std::string body;
  std::string design;
  std::string out = ".";
  bool svg = false;
  std::optional<std::uint64_t> seed;
  int samples = 0;
};

int run_eval(const EvalArgs& a) {
  const GarmentRegistry& reg = GarmentRegistry::builtin();
  if (!reg.has(a.garment)) {
    try {
      reg.get(a.garment);
    } catch (const ValidationError& e) {
      std::cerr << e.what() << "\n";
    }
    return kUnknownGarment;
  }
  const GarmentEntry& entry = reg.get(a.garment);
  const BodyParams body = load_body_file(a.body);
  std::optional<Json> design;
  if (!a.design.empty()) design = read_json_file(a.design);
  const Json* doc = design ? &*design : nullptr;

  if (a.samples <= 0) {
    write_outputs(a.out, evaluate_garment(entry, body, doc, a.seed), a.svg);
    return 0;
  }
  const std::uint64_t first = a.seed.value_or(0);
  for (int k = 0; k < a.samples; ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "sample_%03d", k);
    write_outputs(fs::path(a.out) / name, evaluate_garment(entry, body, doc, first + k), a.svg);
  }
  return 0;
}

int run_schema(const std::string& garment, const std::string& body_path, const std::string& design_path) {
  const GarmentRegistry& reg = GarmentRegistry::builtin();
  if (!reg.has(garment)) {
    try {
      reg.get(garment);
    } catch (const ValidationError& e) {
      std::cerr << e.what() << "\n";
    }
    return kUnknownGarment;
  }
  const BodyParams body = body_path.empty() ? reference_body() : load_body_file(body_path);
  std::optional<Json> design;
  if (!design_path.empty()) design = read_json_file(design_path);
  std::cout << dump_stable(schema_json(reg.get(garment), body, design ? &*design : nullptr));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parametric sewing pattern toolkit"};
  app.require_subcommand(1);

  EvalArgs ea;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a garment into a flat pattern");
  eval->add_option("--garment", ea.garment, "Registered garment name")->required();
  eval->add_option("--body", ea.body, "Body measurement file")->required()->check(CLI::ExistingFile);
  eval->add_option("--design", ea.design, "Design parameter file")->check(CLI::ExistingFile);
  eval->add_option("--out", ea.out, "Output directory");
  eval->add_flag("--svg", ea.svg, "Also write pattern.svg");
  eval->add_option("--seed", ea.seed, "Sample the design with this seed");
  eval->add_option("--samples", ea.samples, "Number of samples, seeds seed..seed+K-1, one directory each");

  CLI::App* list = app.add_subcommand("list", "List registered garments");

  std::string schema_garment, schema_body, schema_design;
  CLI::App* schema = app.add_subcommand("schema", "Print a garment's parameter schema");
  schema->add_option("--garment", schema_garment, "Registered garment name")->required();
  schema->add_option("--body", schema_body, "Body measurement file")->check(CLI::ExistingFile);
  schema->add_option("--design", schema_design, "Design parameter file")->check(CLI::ExistingFile);

  std::string host = "0.0.0.0";
  int port = 8080;
  if (const char* env = std::getenv("PORT")) port = std::atoi(env);
  CLI::App* serve = app.add_subcommand("serve", "Run the HTTP service (port from PORT, default 8080)");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port, overrides PORT");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) return run_eval(ea);
    if (*schema) return run_schema(schema_garment, schema_body, schema_design);
    if (*list) {
      for (const GarmentEntry& e : GarmentRegistry::builtin().entries()) {
        std::cout << e.name << "\t" << e.role << "\t" << e.description << "\n";
      }
      return 0;
    }
    if (*serve) return run_http_server(Service{}, host, port);
  } catch (const Error& e) {
    return report(e);
  } catch (const std::exception& e) {
    std::cerr << dump_stable(Json{{"error", {{"code", "internal"}, {"path", ""}, {"message", e.what()}}}});
    return kInternal;
  }
  return 0;
}
