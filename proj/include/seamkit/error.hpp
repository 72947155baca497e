#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace seamkit {

/// Base of every exception thrown by the library.
///
/// `code` is a short machine-readable tag ("geometry", "validation", ...),
/// `path` names the offending component, parameter or file field when one is
/// known, and `residuals` carries solver diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message, std::string path = {})
      : std::runtime_error(message), code_(std::move(code)), path_(std::move(path)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }
  const std::map<std::string, double>& residuals() const noexcept { return residuals_; }

  Error& with_residual(const std::string& name, double value) {
    residuals_[name] = value;
    return *this;
  }
  void set_path(std::string p) { path_ = std::move(p); }

 private:
  std::string code_;
  std::string path_;
  std::map<std::string, double> residuals_;
};

struct GeometryError : Error {
  explicit GeometryError(const std::string& m, std::string path = {}) : Error("geometry", m, std::move(path)) {}
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& m, std::string path = {})
      : Error("validation", m, std::move(path)) {}
};

struct SolverError : Error {
  explicit SolverError(const std::string& m, std::string path = {}) : Error("solver", m, std::move(path)) {}
};

struct FormatError : Error {
  explicit FormatError(const std::string& m, std::string path = {})
      : Error("format", m, std::move(path)) {}
};

struct ParamError : Error {
  explicit ParamError(const std::string& m, std::string path = {})
      : Error("param", m, std::move(path)) {}
};

}  // namespace seamkit
