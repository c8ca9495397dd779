#include <doctest.h>

#include <cmath>

#include "oulab/cylapprox.hpp"
#include "oulab/domain.hpp"
#include "oulab/estimators.hpp"
#include "oulab/testfn.hpp"

using namespace oulab;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double a : v) x[i++] = a;
  return x;
}

Budget small_budget() {
  Budget b;
  b.paths = 10'000;
  b.panel_size = 6;
  return b;
}

}  // namespace

TEST_CASE("ProjectionSpec") {
  const ProjectionSpec p(4, 2);
  CHECK(p.free_dims() == 2);
  const Eigen::MatrixXd m = p.matrix();
  CHECK((m * m - m).norm() == 0.0);
  CHECK(m.trace() == 2.0);
  const auto x = vec({1, 2, 3, 4});
  CHECK(p.apply(x) == vec({1, 2}));
  CHECK(p.embed(x) == vec({1, 2, 0, 0}));
  CHECK(p.embed(p.embed(x)) == p.embed(x));
  CHECK_THROWS(ProjectionSpec(1, 2));
}

TEST_CASE("factorization of a constant is exact") {
  const auto r = factorization_check(CylFunction::constant(1, 1.0), ConvexDomain::interval(-1, 1), 1,
                                     0.5, small_budget(), 1);
  CHECK(r.lhs == doctest::Approx(0.0).scale(1e-12));
  CHECK(r.pass);
}

TEST_CASE("factorization over the whole line") {
  const auto r = factorization_check(CylFunction::coordinate(1, 0), ConvexDomain::whole_space(1), 2,
                                     0.5, small_budget(), 2);
  CHECK(r.pass);
}

TEST_CASE("factorization over the interval") {
  const auto r = factorization_check(CylFunction::coordinate(1, 0), ConvexDomain::interval(-1, 1), 1,
                                     0.5, small_budget(), 3);
  CHECK(r.pass);
}

TEST_CASE("mean over a product equals the mean over the base") {
  const auto base = ConvexDomain::interval(-1, 1);
  const auto v = CylFunction::parse(1, Eigen::MatrixXd::Ones(1, 1), "(exp v1)");
  const auto on_base = mean_value(v, base, 400'000, 5);
  const auto on_product = mean_value(lift(v, 3), ConvexDomain::product(base, 2), 400'000, 6);
  CHECK(std::abs(on_base.value - on_product.value) <=
        3.0 * std::hypot(on_base.std_error, on_product.std_error));
}

TEST_CASE("disc and polygon masses") {
  const auto ball = ConvexDomain::ball(vec({0, 0}), 1.0);
  CHECK(disc_mass(ball) == doctest::Approx(0.393469340287366576).epsilon(1e-14));
  // Square [-1,1]^2: (Phi(1) - Phi(-1))^2.
  CHECK(polygon_mass(ball, 4) == doctest::Approx(0.466064942674392267).epsilon(1e-10));
  double prev = polygon_mass(ball, 4);
  for (int n = 8; n <= 256; n *= 2) {
    const double m = polygon_mass(ball, n);
    CHECK(m < prev);
    CHECK(m > disc_mass(ball));
    prev = m;
  }
}

TEST_CASE("convergence study of a constant") {
  const auto ball = ConvexDomain::ball(vec({0, 0}), 1.0);
  const auto rows = convergence_study(ball, CylFunction::constant(2, 1.0), 0.5, {4, 8, 16},
                                      {.points = 20, .paths = 50}, 1);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) CHECK(std::abs(r.error) <= 1e-12);
  CHECK(rows[0].excess_mass > rows[1].excess_mass);
  CHECK(rows[1].excess_mass > rows[2].excess_mass);
}

TEST_CASE("convergence study preconditions") {
  const auto off = ConvexDomain::ball(vec({0.5, 0}), 1.0);
  CHECK_THROWS(convergence_study(off, CylFunction::constant(2, 1.0), 0.5, {4}, {}, 1));
  const auto ball = ConvexDomain::ball(vec({0, 0}), 1.0);
  CHECK_THROWS(convergence_study(ball, CylFunction::constant(2, 1.0), 0.5, {8, 4}, {}, 1));
}
