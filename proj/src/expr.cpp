#include "seamkit/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "seamkit/error.hpp"

namespace seamkit {

struct Expr::Node {
  enum class Kind { number, ref, neg, add, sub, mul, div, min, max } kind;
  double value = 0.0;
  std::string name;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

NodePtr make(Kind k, std::vector<NodePtr> args = {}, double v = 0.0, std::string name = {}) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  n->args = std::move(args);
  n->value = v;
  n->name = std::move(name);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr run() {
    NodePtr n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParamError("expression '" + s_ + "': " + what + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr sum() {
    NodePtr lhs = product();
    while (true) {
      if (eat('+')) {
        lhs = make(Kind::add, {lhs, product()});
      } else if (eat('-')) {
        lhs = make(Kind::sub, {lhs, product()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr product() {
    NodePtr lhs = unary();
    while (true) {
      if (eat('*')) {
        lhs = make(Kind::mul, {lhs, unary()});
      } else if (eat('/')) {
        lhs = make(Kind::div, {lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Kind::neg, {unary()});
    if (eat('+')) return unary();
    return atom();
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      NodePtr n = sum();
      if (!eat(')')) fail("missing ')'");
      return n;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return make(Kind::number, {}, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                  s_[pos_] == '.')) {
        ++pos_;
      }
      std::string name = s_.substr(start, pos_ - start);
      if (eat('(')) {
        Kind k;
        if (name == "min") {
          k = Kind::min;
        } else if (name == "max") {
          k = Kind::max;
        } else {
          fail("unknown function '" + name + "'");
        }
        std::vector<NodePtr> args{sum()};
        while (eat(',')) args.push_back(sum());
        if (!eat(')')) fail("missing ')'");
        return make(k, std::move(args));
      }
      return make(Kind::ref, {}, 0.0, std::move(name));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

double eval_node(const Expr::Node& n, const Expr::Lookup& lookup) {
  switch (n.kind) {
    case Kind::number: return n.value;
    case Kind::ref: return lookup(n.name);
    case Kind::neg: return -eval_node(*n.args[0], lookup);
    case Kind::add: return eval_node(*n.args[0], lookup) + eval_node(*n.args[1], lookup);
    case Kind::sub: return eval_node(*n.args[0], lookup) - eval_node(*n.args[1], lookup);
    case Kind::mul: return eval_node(*n.args[0], lookup) * eval_node(*n.args[1], lookup);
    case Kind::div: {
      const double d = eval_node(*n.args[1], lookup);
      if (d == 0.0) throw ParamError("division by zero in expression");
      return eval_node(*n.args[0], lookup) / d;
    }
    case Kind::min:
    case Kind::max: {
      double acc = eval_node(*n.args[0], lookup);
      for (std::size_t i = 1; i < n.args.size(); ++i) {
        const double v = eval_node(*n.args[i], lookup);
        acc = n.kind == Kind::min ? std::min(acc, v) : std::max(acc, v);
      }
      return acc;
    }
  }
  return 0.0;
}

void collect(const Expr::Node& n, std::vector<std::string>& out) {
  if (n.kind == Kind::ref && std::find(out.begin(), out.end(), n.name) == out.end()) out.push_back(n.name);
  for (const auto& a : n.args) collect(*a, out);
}

NodePtr rename_node(const NodePtr& n, const std::function<std::string(const std::string&)>& f) {
  if (n->kind == Kind::ref) return make(Kind::ref, {}, 0.0, f(n->name));
  std::vector<NodePtr> args;
  for (const auto& a : n->args) args.push_back(rename_node(a, f));
  return make(n->kind, std::move(args), n->value, n->name);
}

std::string print(const Expr::Node& n) {
  switch (n.kind) {
    case Kind::number: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      return buf;
    }
    case Kind::ref: return n.name;
    case Kind::neg: return "-(" + print(*n.args[0]) + ")";
    case Kind::add: return "(" + print(*n.args[0]) + " + " + print(*n.args[1]) + ")";
    case Kind::sub: return "(" + print(*n.args[0]) + " - " + print(*n.args[1]) + ")";
    case Kind::mul: return "(" + print(*n.args[0]) + " * " + print(*n.args[1]) + ")";
    case Kind::div: return "(" + print(*n.args[0]) + " / " + print(*n.args[1]) + ")";
    case Kind::min:
    case Kind::max: {
      std::string s = n.kind == Kind::min ? "min(" : "max(";
      for (std::size_t i = 0; i < n.args.size(); ++i) s += (i ? ", " : "") + print(*n.args[i]);
      return s + ")";
    }
  }
  return {};
}

}  // namespace

Expr::Expr() : root_(make(Kind::number)) {}

Expr Expr::parse(const std::string& text) { return Expr(Parser(text).run()); }

Expr Expr::constant(double v) { return Expr(make(Kind::number, {}, v)); }

double Expr::eval(const Lookup& lookup) const { return eval_node(*root_, lookup); }

std::vector<std::string> Expr::references() const {
  std::vector<std::string> out;
  collect(*root_, out);
  return out;
}

Expr Expr::renamed(const std::function<std::string(const std::string&)>& f) const {
  return Expr(rename_node(root_, f));
}

bool Expr::is_constant() const { return root_->kind == Kind::number; }

std::string Expr::str() const {
  std::string s = print(*root_);
  // Drop one redundant pair of outer parentheses.
  if (s.size() > 2 && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    bool outer = true;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      depth += s[i] == '(' ? 1 : s[i] == ')' ? -1 : 0;
      if (depth == 0) {
        outer = false;
        break;
      }
    }
    if (outer) s = s.substr(1, s.size() - 2);
  }
  return s;
}

}  // namespace seamkit
