#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oulab {

// Closed interval over the extended reals.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool finite() const;
};

// Immutable expression tree over formal variables v1..vk. Node kinds are
// closed under differentiation (cos u is written sin(u + pi/2)).
class Expr {
 public:
  enum class Kind { Constant, Variable, Add, Mul, Neg, Pow, Exp, Tanh, Sin };

  static Expr constant(double value);
  // Zero-based index; prints as v{index + 1}.
  static Expr variable(int index);
  static Expr add(std::vector<Expr> terms);
  static Expr mul(std::vector<Expr> factors);
  static Expr neg(Expr e);
  // exponent >= 0.
  static Expr pow(Expr base, int exponent);
  static Expr exp(Expr e);
  static Expr tanh(Expr e);
  static Expr sin(Expr e);

  Kind kind() const { return node_->kind; }
  double value() const { return node_->value; }
  int index() const { return node_->index; }
  int exponent() const { return node_->index; }
  const std::vector<Expr>& args() const { return node_->args; }

  double evaluate(std::span<const double> vars) const;
  Interval enclose(std::span<const Interval> vars) const;
  // Symbolic partial derivative with constant folding.
  Expr derivative(int var) const;
  // One past the largest variable index referenced (0 if none).
  int arity() const;
  bool is_polynomial() const;

  // Prefix text form, e.g. (exp (neg (pow v1 2))). parse(to_string()) reproduces the tree.
  std::string to_string() const;
  static Expr parse(std::string_view text);

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node {
    Kind kind;
    double value = 0.0;
    int index = 0;
    std::vector<Expr> args;
  };
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Kind kind, double value, int index, std::vector<Expr> args);

  std::shared_ptr<const Node> node_;
};

}  // namespace oulab
