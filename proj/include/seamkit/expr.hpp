#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace seamkit {

/// Arithmetic over constants and named references: + - * /, unary minus,
/// parentheses, min(a, b, ...) and max(a, b, ...). Names may contain dots
/// ("body.waist", "sleeve.length").
class Expr {
 public:
  using Lookup = std::function<double(const std::string&)>;

  Expr();  // the constant 0
  static Expr parse(const std::string& text);
  static Expr constant(double v);

  double eval(const Lookup& lookup) const;
  /// Referenced names in first-use order, without duplicates.
  std::vector<std::string> references() const;
  /// Copy with every reference passed through `f`.
  Expr renamed(const std::function<std::string(const std::string&)>& f) const;
  bool is_constant() const;
  std::string str() const;

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

}  // namespace seamkit
