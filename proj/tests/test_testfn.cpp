#include <doctest.h>

#include <cmath>
#include <random>

#include "oulab/domain.hpp"
#include "oulab/error.hpp"
#include "oulab/expr.hpp"
#include "oulab/testfn.hpp"

using namespace oulab;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double a : v) x[i++] = a;
  return x;
}

Eigen::MatrixXd rows(std::initializer_list<std::initializer_list<double>> r) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(r.size()),
                    static_cast<Eigen::Index>(r.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : r) {
    Eigen::Index j = 0;
    for (double a : row) m(i, j++) = a;
    ++i;
  }
  return m;
}

// Profiles used by the acceptance suite plus a few harder ones.
const char* kProfiles1[] = {
    "v1",
    "(pow v1 2)",
    "(tanh v1)",
    "(sin (mul 3 v1))",
    "(exp (neg (pow v1 2)))",
    "(add 2 v1)",
    "(exp (mul 0.5 v1))",
    "(add 1 (tanh v1))",
    "(add 1.5 (sin (mul 3 v1)))",
    "(mul (pow (tanh v1) 2) (exp (neg v1)))",
};

const char* kProfiles2[] = {
    "(add (pow v1 2) (mul v1 v2))",
    "(mul v1 v2)",
    "(tanh (add v1 (mul 0.5 v2)))",
    "(sin (mul v1 (exp (neg (pow v2 2)))))",
};

}  // namespace

TEST_CASE("eval examples") {
  const auto f = CylFunction::parse(2, rows({{1, 0}}), "v1");
  CHECK(f(vec({3, 4})) == 3.0);
  const double s = 1.0 / std::sqrt(2.0);
  const auto g = CylFunction::parse(2, rows({{s, s}}), "(exp (neg (pow v1 2)))");
  CHECK(g(vec({1, 1})) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  const auto h = CylFunction::parse(2, rows({{1, 0}, {0, 1}}), "(mul v1 v2)");
  CHECK(h(vec({2, 5})) == 10.0);
}

TEST_CASE("gradient examples") {
  const auto f = CylFunction::coordinate(2, 0);
  CHECK(f.gradient(vec({-3, 8})) == vec({1, 0}));
  const auto g = CylFunction::parse(2, rows({{1, 0}}), "(pow v1 2)");
  CHECK(g.gradient(vec({3, 0})) == vec({6, 0}));
  CHECK(CylFunction::constant(3, 2.5).gradient(vec({1, 2, 3})).norm() == 0.0);
}

TEST_CASE("gradient matches central differences") {
  std::mt19937_64 gen(21);
  std::normal_distribution<double> g;
  const double h = 1e-5;
  auto check = [&](const CylFunction& f) {
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::VectorXd x(f.dim());
      for (int i = 0; i < f.dim(); ++i) x[i] = g(gen);
      const Eigen::VectorXd grad = f.gradient(x);
      for (int i = 0; i < f.dim(); ++i) {
        Eigen::VectorXd xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const double fd = (f(xp) - f(xm)) / (2.0 * h);
        INFO(f.profile().to_string() << " at axis " << i);
        REQUIRE(std::abs(fd - grad[i]) <= 1e-6 * std::max(1.0, std::abs(grad[i])));
      }
    }
  };
  for (const char* p : kProfiles1) {
    check(CylFunction::parse(1, rows({{1}}), p));
    check(CylFunction::parse(3, rows({{0.3, -0.4, 0.5}}), p));
  }
  for (const char* p : kProfiles2) {
    check(CylFunction::parse(2, rows({{1, 0}, {0, 1}}), p));
    check(CylFunction::parse(3, rows({{1, 2, 0}, {0, -1, 0.5}}), p));
  }
}

TEST_CASE("lift") {
  const auto lifted = lift(CylFunction::coordinate(1, 0), 3);
  CHECK(lifted.dim() == 3);
  CHECK(lifted.gradient(vec({0.2, -1, 4})) == vec({1, 0, 0}));

  std::mt19937_64 gen(8);
  std::normal_distribution<double> g;
  for (const char* p : kProfiles2) {
    const auto f = CylFunction::parse(2, rows({{1, 0.5}, {-0.25, 1}}), p);
    const auto lf = lift(f, 4);
    for (int i = 0; i < 1000; ++i) {
      const Eigen::VectorXd x = vec({g(gen), g(gen), g(gen), g(gen)});
      const Eigen::VectorXd px = x.head(2);
      REQUIRE(lf(x) == f(px));
      const Eigen::VectorXd gl = lf.gradient(x);
      REQUIRE(gl.head(2) == f.gradient(px));
      REQUIRE(gl.tail(2).isZero(0.0));
      REQUIRE(lf.gradient_norm(x) == f.gradient_norm(px));
    }
  }
  CHECK_THROWS(lift(CylFunction::coordinate(2, 0), 1));
}

TEST_CASE("DSL round trip") {
  for (const char* p : kProfiles1) {
    const Expr e = Expr::parse(p);
    CHECK(Expr::parse(e.to_string()) == e);
  }
  for (const char* p : kProfiles2) {
    const Expr e = Expr::parse(p);
    CHECK(Expr::parse(e.to_string()) == e);
    CHECK(e.arity() == 2);
  }
  CHECK(Expr::parse("(pow v1 3)").is_polynomial());
  CHECK_FALSE(Expr::parse("(tanh v1)").is_polynomial());
}

TEST_CASE("DSL parse errors carry a column") {
  auto column_of = [](const char* text) -> std::size_t {
    try {
      Expr::parse(text);
    } catch (const ParseError& e) {
      return e.column();
    }
    return 0;
  };
  CHECK(column_of("(tanh v1") == 9);
  CHECK(column_of("(foo v1)") == 2);
  CHECK(column_of("(add v1 x)") == 9);
  CHECK(column_of("(pow v1 -2)") == 9);
  CHECK(column_of("v1 v2") == 4);
  CHECK(column_of("v0") == 1);
  CHECK(column_of("") == 1);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(CylFunction::parse(2, rows({{1, 0, 0}}), "v1"), DimensionMismatch);
  CHECK_THROWS_AS(CylFunction::parse(2, rows({{1, 0}}), "(mul v1 v2)"), std::invalid_argument);
  CHECK_THROWS_AS(CylFunction::coordinate(2, 0)(vec({1, 2, 3})), DimensionMismatch);
}

TEST_CASE("enclosures and boundedness") {
  const auto tanh_f = CylFunction::parse(1, rows({{1}}), "(tanh v1)", true);
  const auto box = truncation_box(ConvexDomain::whole_space(1), 1e-12);
  CHECK(verify_bounded(tanh_f, box));
  const auto x2 = CylFunction::parse(1, rows({{1}}), "(pow v1 2)", true);
  CHECK_FALSE(verify_bounded(x2, box));

  const auto iv = CylFunction::parse(1, rows({{1}}), "(pow v1 2)").enclose(
      truncation_box(ConvexDomain::interval(-1, 1), 1e-12));
  CHECK(iv.lo <= 0.0);
  CHECK(iv.hi >= 1.0);
  const auto grad = CylFunction::parse(1, rows({{1}}), "(pow v1 2)")
                        .enclose_gradient(truncation_box(ConvexDomain::interval(-1, 1), 1e-12));
  CHECK(grad[0].lo <= -2.0);
  CHECK(grad[0].hi >= 2.0);
}
