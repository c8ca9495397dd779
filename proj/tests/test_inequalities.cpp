#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oulab/domain.hpp"
#include "oulab/error.hpp"
#include "oulab/grid.hpp"
#include "oulab/inequalities.hpp"
#include "oulab/testfn.hpp"

using namespace oulab;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double a : v) x[i++] = a;
  return x;
}

CylFunction fn1(const char* profile, bool bounded = false) {
  return CylFunction::parse(1, Eigen::MatrixXd::Ones(1, 1), profile, bounded);
}

Budget small_budget() {
  Budget b;
  b.samples = 200'000;
  b.paths = 20'000;
  b.panel_size = 8;
  return b;
}

bool recomputed_pass(const InequalityReport& r) {
  return std::isfinite(r.margin) && r.rhs - r.lhs >= -r.tolerance;
}

}  // namespace

TEST_CASE("report pass flag follows margin and tolerance") {
  auto ok = make_report("a", 1.0, 1.0, 0.0);
  CHECK(ok.pass);
  CHECK(ok.margin == 0.0);
  auto near = make_report("b", 1.05, 1.0, 0.1);
  CHECK(near.pass);
  auto bad = make_report("c", 1.2, 1.0, 0.1);
  CHECK_FALSE(bad.pass);
  auto nan = make_report("d", std::nan(""), 1.0, 0.1);
  CHECK_FALSE(nan.pass);
}

TEST_CASE("poincare examples") {
  const auto b = small_budget();
  const auto line = ConvexDomain::whole_space(1);
  const auto r1 = check_poincare(CylFunction::coordinate(1, 0), line, b, 1);
  CHECK(r1.pass);
  CHECK(r1.rhs == 1.0);
  CHECK(std::abs(r1.margin) <= 2.0 * r1.tolerance);

  const auto r2 = check_poincare(CylFunction::constant(1, 4.0), line, b, 2);
  CHECK(r2.lhs == doctest::Approx(0.0).scale(1e-20));
  CHECK(r2.rhs == 0.0);
  CHECK(r2.pass);

  // Half-normal variance 1 - 2/pi.
  const auto r3 = check_poincare(CylFunction::coordinate(1, 0), ConvexDomain::half_line_above(0.0), b, 3);
  CHECK(r3.pass);
  CHECK(r3.lhs == doctest::Approx(1.0 - 2.0 / std::numbers::pi).epsilon(0.01));
  CHECK(r3.margin == doctest::Approx(2.0 / std::numbers::pi).epsilon(0.01));
  CHECK(recomputed_pass(r3) == r3.pass);
}

TEST_CASE("log-Sobolev examples") {
  const auto b = small_budget();
  const auto line = ConvexDomain::whole_space(1);
  const double c = 3.0;
  const auto r1 = check_logsob(CylFunction::constant(1, c), line, b, 1);
  CHECK(std::abs(r1.lhs - c * c * std::log(c)) <= 1e-9);
  CHECK(std::abs(r1.rhs - c * c * std::log(c)) <= 1e-9);
  CHECK(r1.pass);

  // f = exp(x/2): both sides are sqrt(e)/2 by E e^{sx} = e^{s^2/2}.
  const auto r2 = check_logsob(fn1("(exp (mul 0.5 v1))"), line, b, 2);
  CHECK(r2.pass);
  const double half_sqrt_e = 0.5 * std::exp(0.5);
  CHECK(r2.lhs == doctest::Approx(half_sqrt_e).epsilon(0.02));
  CHECK(r2.rhs == doctest::Approx(half_sqrt_e).epsilon(0.02));

  const auto lower = ConvexDomain::halfspaces(1, {{vec({1}), 0.0}});
  const auto r3 = check_logsob(fn1("(add 1 (tanh v1))", true), lower, b, 3);
  CHECK(r3.pass);
  CHECK(r3.detail("clipped") == "0");
}

TEST_CASE("gradient bound examples") {
  Budget b;
  const auto line = ConvexDomain::whole_space(1);
  for (double t : {0.1, 0.5, 1.0}) {
    const auto r = check_gradient_bound(CylFunction::coordinate(1, 0), line, t, b);
    CHECK(r.pass);
    CHECK(r.rhs == doctest::Approx(std::exp(-t)).epsilon(1e-12));
    CHECK(std::abs(r.margin) <= 2.0 * r.tolerance);
  }
  const auto x2 = fn1("(pow v1 2)");
  const auto r0 = check_gradient_bound(x2, ConvexDomain::interval(-1, 1), 0.0, b);
  CHECK(std::abs(r0.lhs - r0.rhs) <= 1e-9);
  CHECK(check_gradient_bound(x2, ConvexDomain::interval(-1, 1), 0.3, b).pass);
}

TEST_CASE("submultiplicativity examples") {
  auto b = small_budget();
  const auto dom = ConvexDomain::interval(-1, 1);
  const auto panel = default_panel(dom, b, 4);
  const auto x = CylFunction::coordinate(1, 0);
  const auto th = fn1("(tanh v1)", true);
  const auto reports = check_submultiplicative(
      {{x, th}, {x, x}, {x, CylFunction::constant(1, 1.0)}}, dom, 0.5, panel, b, 9);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].pass);
  // g = f: both sides are (T f^2)^2, equal up to rounding.
  CHECK(std::abs(reports[1].margin) <= 1e-12 * std::max(1.0, reports[1].rhs));
  CHECK(reports[1].pass);
  // g = 1: Jensen, the margin is a variance and never negative.
  CHECK(reports[2].margin >= 0.0);
  CHECK(reports[2].pass);

  const auto single = check_submultiplicative(x, th, dom, 0.5, panel, b, 9);
  CHECK(single.lhs == reports[0].lhs);
  CHECK(single.rhs == reports[0].rhs);
}

TEST_CASE("invariance examples") {
  const auto b = small_budget();
  const auto interval = ConvexDomain::interval(-1, 1);
  const auto r1 = check_invariance(CylFunction::constant(1, 2.0), interval, 1.0, b, 1);
  CHECK(r1.lhs == 0.0);
  CHECK(r1.pass);
  CHECK(check_invariance(CylFunction::coordinate(1, 0), interval, 1.0, b, 2).pass);
  const auto gi = check_invariance_grid(CylFunction::coordinate(1, 0), interval, 1.0, b);
  CHECK(gi.pass);
  CHECK(gi.lhs <= 1e-9);
  CHECK(check_invariance(fn1("(pow v1 2)"), ConvexDomain::whole_space(1), 0.7, b, 3).pass);
}

TEST_CASE("decay examples") {
  Budget b;
  const auto line = ConvexDomain::whole_space(1);
  const auto rx = check_decay(CylFunction::coordinate(1, 0), line, {0.25, 0.5, 1.0, 2.0}, b);
  for (const auto& r : rx) {
    CHECK(r.pass);
    CHECK(std::abs(r.margin) <= 1e-4);
  }
  const auto rc = check_decay(CylFunction::constant(1, 5.0), line, {1.0}, b);
  CHECK(rc[0].lhs <= 1e-12);
  const auto rh = check_decay(fn1("(pow v1 2)"), ConvexDomain::half_line_above(0.0), {0.5, 1.0, 2.0}, b);
  for (const auto& r : rh) CHECK(r.pass);
  // Relative margin grows with t since the gap is 2.
  CHECK(rh[1].margin / rh[1].rhs > rh[0].margin / rh[0].rhs);
  CHECK(rh[2].margin / rh[2].rhs > rh[1].margin / rh[1].rhs);
}

TEST_CASE("positivity and contraction examples") {
  Budget b;
  const auto one = check_positivity_and_contraction(CylFunction::constant(1, 1.0),
                                                    ConvexDomain::interval(-1, 1), 0.5, b);
  CHECK(one.pass);
  CHECK(std::stod(one.detail("min_Tf")) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::stod(one.detail("max_Tf")) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(check_positivity_and_contraction(fn1("(pow v1 2)"), ConvexDomain::interval(-1, 1), 0.5, b).pass);
  const auto s = check_positivity_and_contraction(fn1("(sin (mul 3 v1))", true),
                                                  ConvexDomain::whole_space(1), 1.0, b);
  CHECK(s.pass);
  CHECK(std::stod(s.detail("max_Tf")) <= 1.0);
}

TEST_CASE("entropy trace examples") {
  Budget b;
  const auto interval = ConvexDomain::interval(-1, 1);
  const auto times = default_entropy_times();
  REQUIRE(times.size() == 40);

  const auto flat = entropy_trace(CylFunction::constant(1, 2.0), interval, times, b, 0.5);
  for (std::size_t k = 0; k < times.size(); ++k) {
    CHECK(flat.entropy[k] == doctest::Approx(4.0 * std::log(4.0)).epsilon(1e-12));
    CHECK(std::abs(flat.production[k]) <= 1e-10);
    CHECK(flat.bound[k] == 0.0);
  }

  const auto f = fn1("(add 2 v1)");
  const auto tr = entropy_trace(f, interval, times, b, 0.5);
  for (std::size_t k = 1; k < times.size(); ++k) CHECK(tr.entropy[k] <= tr.entropy[k - 1] + 1e-12);
  CHECK(tr.production_report.pass);
  CHECK(tr.limit_report.pass);

  // Integrating the production bound gives the doubled log-Sobolev inequality:
  // S(0) - limit <= E|grad phi|^2/phi / 2 = 2 E|grad f|^2. Against the
  // sampled check the margins agree: E|grad f|^2 - (S(0) - limit)/2.
  const auto ls = check_logsob(f, interval, b, 5);
  const double grid_margin = 1.0 - 0.5 * (tr.entropy[0] - tr.limit);
  CHECK(std::abs(grid_margin - ls.margin) <= ls.tolerance + 1e-3);

  CHECK_THROWS_AS(entropy_trace(f, interval, times, b, 1.5), BelowFloor);
}

TEST_CASE("oracle triangle on the whole line") {
  Budget b = small_budget();
  b.resolution = {800};
  b.panel_size = 5;
  const auto panel = default_panel(ConvexDomain::whole_space(1), b, 3);
  for (double t : {0.2, 1.0}) {
    const auto reports = oracle_triangle(fn1("(tanh v1)", true), 1, t, panel, b, 11);
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) CHECK(r.pass);
  }
}

TEST_CASE("bias allowance scales with the step") {
  Budget b;
  const auto th = fn1("(tanh (mul 2 v1))", true);
  CHECK(lipschitz_bound(th, ConvexDomain::interval(-1, 1), 1e-12) >= 2.0);
  CHECK(std::isinf(lipschitz_bound(fn1("(pow v1 2)"), ConvexDomain::whole_space(1), 0.5)) == false);
  CHECK(reflects(ConvexDomain::interval(-1, 1)));
  CHECK_FALSE(reflects(ConvexDomain::whole_space(2)));
  CHECK_FALSE(reflects(ConvexDomain::product(ConvexDomain::whole_space(1), 2)));
  const double reflecting = bias_allowance(th, ConvexDomain::interval(-1, 1), b);
  const double whole = bias_allowance(th, ConvexDomain::whole_space(1), b);
  CHECK(reflecting == doctest::Approx(1.5 * 2.0 * std::sqrt(1e-3)).epsilon(1e-9));
  CHECK(whole == doctest::Approx(1.5 * 2.0 * 1e-3).epsilon(1e-9));
}
