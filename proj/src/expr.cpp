#include "oulab/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "oulab/error.hpp"

namespace oulab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Product of interval endpoints with 0 * inf = 0 (closure of the extended reals).
double endpoint_product(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

Interval interval_mul(Interval a, Interval b) {
  const double p[4] = {endpoint_product(a.lo, b.lo), endpoint_product(a.lo, b.hi),
                       endpoint_product(a.hi, b.lo), endpoint_product(a.hi, b.hi)};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval interval_pow(Interval a, int n) {
  if (n == 0) return {1.0, 1.0};
  const double lo = std::pow(a.lo, n);
  const double hi = std::pow(a.hi, n);
  if (n % 2 == 1) return {lo, hi};
  if (a.lo >= 0.0) return {lo, hi};
  if (a.hi <= 0.0) return {hi, lo};
  return {0.0, std::max(lo, hi)};
}

Interval interval_sin(Interval a) {
  if (!a.finite() || a.hi - a.lo >= 2.0 * std::numbers::pi) return {-1.0, 1.0};
  double lo = std::min(std::sin(a.lo), std::sin(a.hi));
  double hi = std::max(std::sin(a.lo), std::sin(a.hi));
  const double two_pi = 2.0 * std::numbers::pi;
  // Crest at pi/2 + 2 pi k, trough at -pi/2 + 2 pi k.
  if (std::ceil((a.lo - std::numbers::pi / 2) / two_pi) <=
      std::floor((a.hi - std::numbers::pi / 2) / two_pi))
    hi = 1.0;
  if (std::ceil((a.lo + std::numbers::pi / 2) / two_pi) <=
      std::floor((a.hi + std::numbers::pi / 2) / two_pi))
    lo = -1.0;
  return {lo, hi};
}

bool is_const(const Expr& e, double v) {
  return e.kind() == Expr::Kind::Constant && e.value() == v;
}

// Folding constructors used by differentiation.
Expr fold_add(std::vector<Expr> terms) {
  std::vector<Expr> kept;
  double c = 0.0;
  for (auto& t : terms) {
    if (t.kind() == Expr::Kind::Constant) {
      c += t.value();
    } else {
      kept.push_back(std::move(t));
    }
  }
  if (c != 0.0 || kept.empty()) kept.insert(kept.begin(), Expr::constant(c));
  if (kept.size() == 1) return kept.front();
  return Expr::add(std::move(kept));
}

Expr fold_mul(std::vector<Expr> factors) {
  std::vector<Expr> kept;
  double c = 1.0;
  for (auto& f : factors) {
    if (f.kind() == Expr::Kind::Constant) {
      c *= f.value();
    } else {
      kept.push_back(std::move(f));
    }
  }
  if (c == 0.0) return Expr::constant(0.0);
  if (c != 1.0 || kept.empty()) kept.insert(kept.begin(), Expr::constant(c));
  if (kept.size() == 1) return kept.front();
  return Expr::mul(std::move(kept));
}

Expr fold_neg(const Expr& e) {
  if (e.kind() == Expr::Kind::Constant) return Expr::constant(-e.value());
  if (e.kind() == Expr::Kind::Neg) return e.args().front();
  return Expr::neg(e);
}

Expr fold_pow(const Expr& base, int n) {
  if (n == 0) return Expr::constant(1.0);
  if (n == 1) return base;
  if (base.kind() == Expr::Kind::Constant) return Expr::constant(std::pow(base.value(), n));
  return Expr::pow(base, n);
}

const char* kind_name(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add: return "add";
    case Expr::Kind::Mul: return "mul";
    case Expr::Kind::Neg: return "neg";
    case Expr::Kind::Pow: return "pow";
    case Expr::Kind::Exp: return "exp";
    case Expr::Kind::Tanh: return "tanh";
    case Expr::Kind::Sin: return "sin";
    default: return "";
  }
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_ + 1); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view atom() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_) fail("expected an atom");
    return text_.substr(start, pos_ - start);
  }

  Expr parse_atom() {
    const std::size_t start = pos_;
    std::string_view a = atom();
    if (a.size() >= 2 && a[0] == 'v') {
      int idx = 0;
      auto [p, ec] = std::from_chars(a.data() + 1, a.data() + a.size(), idx);
      if (ec == std::errc() && p == a.data() + a.size() && idx >= 1) return Expr::variable(idx - 1);
      pos_ = start;
      fail("bad variable name '" + std::string(a) + "'");
    }
    double v = 0.0;
    auto [p, ec] = std::from_chars(a.data(), a.data() + a.size(), v);
    if (ec != std::errc() || p != a.data() + a.size() || !std::isfinite(v)) {
      pos_ = start;
      fail("unknown atom '" + std::string(a) + "'");
    }
    return Expr::constant(v);
  }

  Expr parse_expr() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == ')') fail("unexpected ')'");
    if (text_[pos_] != '(') return parse_atom();
    ++pos_;
    const std::size_t op_pos = pos_;
    const std::string op(atom());
    std::vector<Expr> args;
    int exponent = -1;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) fail("missing ')'");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      if (op == "pow" && args.size() == 1) {
        const std::size_t start = pos_;
        std::string_view a = atom();
        auto [p, ec] = std::from_chars(a.data(), a.data() + a.size(), exponent);
        if (ec != std::errc() || p != a.data() + a.size() || exponent < 0) {
          pos_ = start;
          fail("pow exponent must be a nonnegative integer");
        }
        args.push_back(Expr::constant(exponent));
        continue;
      }
      args.push_back(parse_expr());
    }
    auto want = [&](std::size_t n) {
      if (args.size() != n) {
        pos_ = op_pos;
        fail("'" + op + "' takes " + std::to_string(n) + " argument(s)");
      }
    };
    if (op == "add" || op == "mul") {
      if (args.empty()) {
        pos_ = op_pos;
        fail("'" + op + "' needs at least one argument");
      }
      return op == "add" ? Expr::add(std::move(args)) : Expr::mul(std::move(args));
    }
    if (op == "pow") {
      want(2);
      return Expr::pow(args[0], exponent);
    }
    want(1);
    if (op == "neg") return Expr::neg(args[0]);
    if (op == "exp") return Expr::exp(args[0]);
    if (op == "tanh") return Expr::tanh(args[0]);
    if (op == "sin") return Expr::sin(args[0]);
    pos_ = op_pos;
    fail("unknown operator '" + op + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

bool Interval::finite() const { return std::isfinite(lo) && std::isfinite(hi); }

Expr Expr::make(Kind kind, double value, int index, std::vector<Expr> args) {
  return Expr(std::make_shared<const Node>(Node{kind, value, index, std::move(args)}));
}

Expr Expr::constant(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("constants must be finite");
  return make(Kind::Constant, value, 0, {});
}
Expr Expr::variable(int index) {
  if (index < 0) throw std::invalid_argument("variable index must be nonnegative");
  return make(Kind::Variable, 0.0, index, {});
}
Expr Expr::add(std::vector<Expr> terms) {
  if (terms.empty()) throw std::invalid_argument("add needs at least one term");
  return make(Kind::Add, 0.0, 0, std::move(terms));
}
Expr Expr::mul(std::vector<Expr> factors) {
  if (factors.empty()) throw std::invalid_argument("mul needs at least one factor");
  return make(Kind::Mul, 0.0, 0, std::move(factors));
}
Expr Expr::neg(Expr e) { return make(Kind::Neg, 0.0, 0, {std::move(e)}); }
Expr Expr::pow(Expr base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("pow exponent must be nonnegative");
  return make(Kind::Pow, 0.0, exponent, {std::move(base)});
}
Expr Expr::exp(Expr e) { return make(Kind::Exp, 0.0, 0, {std::move(e)}); }
Expr Expr::tanh(Expr e) { return make(Kind::Tanh, 0.0, 0, {std::move(e)}); }
Expr Expr::sin(Expr e) { return make(Kind::Sin, 0.0, 0, {std::move(e)}); }

double Expr::evaluate(std::span<const double> vars) const {
  const auto& n = *node_;
  switch (n.kind) {
    case Kind::Constant: return n.value;
    case Kind::Variable:
      if (static_cast<std::size_t>(n.index) >= vars.size())
        throw std::out_of_range("expression references an unbound variable");
      return vars[static_cast<std::size_t>(n.index)];
    case Kind::Add: {
      double s = 0.0;
      for (const auto& a : n.args) s += a.evaluate(vars);
      return s;
    }
    case Kind::Mul: {
      double p = 1.0;
      for (const auto& a : n.args) p *= a.evaluate(vars);
      return p;
    }
    case Kind::Neg: return -n.args[0].evaluate(vars);
    case Kind::Pow: {
      const double b = n.args[0].evaluate(vars);
      double r = 1.0;
      for (int i = 0; i < n.index; ++i) r *= b;
      return r;
    }
    case Kind::Exp: return std::exp(n.args[0].evaluate(vars));
    case Kind::Tanh: return std::tanh(n.args[0].evaluate(vars));
    case Kind::Sin: return std::sin(n.args[0].evaluate(vars));
  }
  return 0.0;
}

Interval Expr::enclose(std::span<const Interval> vars) const {
  const auto& n = *node_;
  switch (n.kind) {
    case Kind::Constant: return {n.value, n.value};
    case Kind::Variable:
      if (static_cast<std::size_t>(n.index) >= vars.size())
        throw std::out_of_range("expression references an unbound variable");
      return vars[static_cast<std::size_t>(n.index)];
    case Kind::Add: {
      Interval s{0.0, 0.0};
      for (const auto& a : n.args) {
        const Interval t = a.enclose(vars);
        s = {s.lo + t.lo, s.hi + t.hi};
      }
      return s;
    }
    case Kind::Mul: {
      Interval p{1.0, 1.0};
      for (const auto& a : n.args) p = interval_mul(p, a.enclose(vars));
      return p;
    }
    case Kind::Neg: {
      const Interval a = n.args[0].enclose(vars);
      return {-a.hi, -a.lo};
    }
    case Kind::Pow: return interval_pow(n.args[0].enclose(vars), n.index);
    case Kind::Exp: {
      const Interval a = n.args[0].enclose(vars);
      return {std::exp(a.lo), std::exp(a.hi)};
    }
    case Kind::Tanh: {
      const Interval a = n.args[0].enclose(vars);
      return {std::tanh(a.lo), std::tanh(a.hi)};
    }
    case Kind::Sin: return interval_sin(n.args[0].enclose(vars));
  }
  return {-kInf, kInf};
}

Expr Expr::derivative(int var) const {
  const auto& n = *node_;
  switch (n.kind) {
    case Kind::Constant: return constant(0.0);
    case Kind::Variable: return constant(n.index == var ? 1.0 : 0.0);
    case Kind::Add: {
      std::vector<Expr> terms;
      for (const auto& a : n.args) terms.push_back(a.derivative(var));
      return fold_add(std::move(terms));
    }
    case Kind::Mul: {
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        Expr d = n.args[i].derivative(var);
        if (is_const(d, 0.0)) continue;
        std::vector<Expr> factors = n.args;
        factors[i] = d;
        terms.push_back(fold_mul(std::move(factors)));
      }
      return terms.empty() ? constant(0.0) : fold_add(std::move(terms));
    }
    case Kind::Neg: return fold_neg(n.args[0].derivative(var));
    case Kind::Pow: {
      Expr d = n.args[0].derivative(var);
      if (is_const(d, 0.0) || n.index == 0) return constant(0.0);
      return fold_mul({constant(n.index), fold_pow(n.args[0], n.index - 1), d});
    }
    case Kind::Exp: {
      Expr d = n.args[0].derivative(var);
      if (is_const(d, 0.0)) return constant(0.0);
      return fold_mul({*this, d});
    }
    case Kind::Tanh: {
      Expr d = n.args[0].derivative(var);
      if (is_const(d, 0.0)) return constant(0.0);
      return fold_mul({fold_add({constant(1.0), fold_neg(fold_pow(*this, 2))}), d});
    }
    case Kind::Sin: {
      Expr d = n.args[0].derivative(var);
      if (is_const(d, 0.0)) return constant(0.0);
      Expr cosine = sin(fold_add({n.args[0], constant(std::numbers::pi / 2)}));
      return fold_mul({cosine, d});
    }
  }
  return constant(0.0);
}

int Expr::arity() const {
  if (node_->kind == Kind::Variable) return node_->index + 1;
  int k = 0;
  for (const auto& a : node_->args) k = std::max(k, a.arity());
  return k;
}

bool Expr::is_polynomial() const {
  switch (node_->kind) {
    case Kind::Exp:
    case Kind::Tanh:
    case Kind::Sin: return false;
    default: break;
  }
  return std::all_of(node_->args.begin(), node_->args.end(),
                     [](const Expr& a) { return a.is_polynomial(); });
}

std::string Expr::to_string() const {
  const auto& n = *node_;
  switch (n.kind) {
    case Kind::Constant: return format_number(n.value);
    case Kind::Variable: return "v" + std::to_string(n.index + 1);
    case Kind::Pow: return "(pow " + n.args[0].to_string() + " " + std::to_string(n.index) + ")";
    default: break;
  }
  std::string s = "(";
  s += kind_name(n.kind);
  for (const auto& a : n.args) s += " " + a.to_string();
  s += ")";
  return s;
}

Expr Expr::parse(std::string_view text) { return Parser(text).parse_all(); }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.index() != b.index() || a.args().size() != b.args().size())
    return false;
  if (a.kind() == Expr::Kind::Constant && a.value() != b.value()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!(a.args()[i] == b.args()[i])) return false;
  return true;
}

}  // namespace oulab
