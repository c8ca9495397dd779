#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oulab/domain.hpp"
#include "oulab/error.hpp"
#include "oulab/gauss.hpp"
#include "oulab/sampling.hpp"

using namespace oulab;

// Oracles computed offline with mpmath at 30 digits.
static constexpr double kPhi1MinusPhiM1 = 0.682689492137085897;
static constexpr double kHalfNormalMean = 0.797884560802865356;

TEST_CASE("gauss_hermite order 1 is the point mass at 0") {
  const auto rule = gauss::gauss_hermite(1);
  REQUIRE(rule.size() == 1);
  CHECK(rule.nodes[0] == 0.0);
  CHECK(rule.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gauss_hermite low-order moments") {
  CHECK(gauss::gauss_hermite(2).integrate([](double x) { return x * x; }) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gauss::gauss_hermite(3).integrate([](double x) { return std::pow(x, 4); }) ==
        doctest::Approx(3.0).epsilon(1e-14));
}

// Relative to sum w |x|^k, the size of the terms being summed; odd moments
// vanish, so relative to the exact value alone would be meaningless.
TEST_CASE("gauss_hermite is exact up to degree 2n-1 for n <= 64") {
  for (int n = 1; n <= 64; ++n) {
    const auto rule = gauss::gauss_hermite(n);
    double wsum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(std::abs(wsum - 1.0) <= 1e-12);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      const double q = rule.integrate([k](double x) { return std::pow(x, k); });
      const double exact = gauss::gaussian_moment(k);
      const double scale =
          std::max(1.0, rule.integrate([k](double x) { return std::pow(std::abs(x), k); }));
      INFO("n=" << n << " k=" << k);
      CHECK(std::abs(q - exact) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("gauss_hermite rejects orders outside 1..512") {
  CHECK_THROWS_AS(gauss::gauss_hermite(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss::gauss_hermite(513), std::invalid_argument);
  CHECK_NOTHROW(gauss::gauss_hermite(512));
}

TEST_CASE("gauss_hermite high order stays symmetric with positive weights") {
  const auto rule = gauss::gauss_hermite(512);
  const std::size_t n = rule.size();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(rule.weights[i] > 0.0);
    CHECK(std::abs(rule.nodes[i] + rule.nodes[n - 1 - i]) <= 1e-9);
  }
}

TEST_CASE("hermite polynomials and moments") {
  CHECK(gauss::hermite_he(0, 1.7) == 1.0);
  CHECK(gauss::hermite_he(1, 1.7) == doctest::Approx(1.7));
  CHECK(gauss::hermite_he(3, 2.0) == doctest::Approx(8.0 - 6.0));
  CHECK(gauss::gaussian_moment(6) == 15.0);
  CHECK(gauss::gaussian_moment(5) == 0.0);
}

TEST_CASE("normal tails") {
  CHECK(gauss::normal_cdf(1.0) - gauss::normal_cdf(-1.0) ==
        doctest::Approx(kPhi1MinusPhiM1).epsilon(1e-14));
  CHECK(gauss::normal_upper_quantile(gauss::normal_upper_tail(5.0)) ==
        doctest::Approx(5.0).epsilon(1e-10));
  CHECK(gauss::normal_upper_tail(10.0) == doctest::Approx(7.61985301648650307e-24).epsilon(1e-10));
}

TEST_CASE("sample_gaussian is deterministic and has the right moments") {
  const auto a = gauss::sample_gaussian(1, 1'000'000, 42);
  const auto b = gauss::sample_gaussian(1, 1'000'000, 42);
  CHECK(a == b);
  CHECK(std::abs(a.mean()) <= 4.0 / std::sqrt(1e6));

  const auto c = gauss::sample_gaussian(3, 1'000'000, 7);
  const Eigen::VectorXd mu = c.rowwise().mean();
  const Eigen::MatrixXd centred = c.colwise() - mu;
  const Eigen::MatrixXd cov = centred * centred.transpose() / (c.cols() - 1.0);
  CHECK((cov - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 0.01);
}

TEST_CASE("restricted_sample on the whole space is plain Gaussian sampling") {
  const auto s = gauss::restricted_sample(ConvexDomain::whole_space(2), 1000, 9);
  CHECK(s.acceptance_rate == 1.0);
  CHECK(s.points.cols() == 1000);
  CHECK(s.points == gauss::sample_gaussian(2, 1000, 9));
}

TEST_CASE("restricted_sample acceptance rates") {
  const auto half = gauss::restricted_sample(ConvexDomain::half_line_above(0.0), 200'000, 3);
  CHECK(std::abs(half.acceptance_rate - 0.5) <= 0.01);
  const auto unit = gauss::restricted_sample(ConvexDomain::interval(-1.0, 1.0), 200'000, 4);
  CHECK(std::abs(unit.acceptance_rate - kPhi1MinusPhiM1) <= 0.01);
  for (Eigen::Index j = 0; j < unit.points.cols(); ++j) {
    REQUIRE(std::abs(unit.points(0, j)) <= 1.0);
  }
}

TEST_CASE("restricted_sample refuses domains of negligible mass") {
  CHECK_THROWS_AS(gauss::restricted_sample(ConvexDomain::half_line_above(5.0), 10, 1),
                  MassTooSmall);
}

TEST_CASE("restricted_sample on a half-line has the half-normal mean") {
  const auto s = gauss::restricted_sample(ConvexDomain::half_line_above(0.0), 1'000'000, 11);
  const Eigen::ArrayXd x = s.points.row(0).transpose().array();
  const double mean = x.mean();
  const double se = std::sqrt((x - mean).square().sum() / (x.size() - 1.0) / x.size());
  CHECK(std::abs(mean - kHalfNormalMean) <= 4.0 * se);
}

TEST_CASE("gaussian_mass") {
  const auto whole = gauss::gaussian_mass(ConvexDomain::whole_space(2), 1000, 1);
  CHECK(whole.value == 1.0);
  CHECK(whole.std_error == 0.0);

  Halfspace left{Eigen::Vector2d(1.0, 0.0), 0.0};
  Halfspace down{Eigen::Vector2d(0.0, 1.0), 0.0};
  const auto half = gauss::gaussian_mass(ConvexDomain::halfspaces(2, {left}), 200'000, 2);
  CHECK(std::abs(half.value - 0.5) <= 3.0 * half.std_error);
  const auto quarter = gauss::gaussian_mass(ConvexDomain::halfspaces(2, {left, down}), 200'000, 4);
  CHECK(std::abs(quarter.value - 0.25) <= 3.0 * quarter.std_error);
}
