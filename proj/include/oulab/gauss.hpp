#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

// Standard Gaussian measure utilities: scalar density/tails, Gauss-Hermite
// quadrature against the standard normal, Hermite polynomials and sampling.
namespace oulab::gauss {

inline constexpr int kMaxQuadratureOrder = 512;

// Nodes and probability weights for integrals against the standard normal,
// i.e. the weights sum to one.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const;
};

// Golub-Welsch nodes (symmetric tridiagonal eigenproblem), polished by Newton
// on the orthonormal Hermite recurrence; weights from the Christoffel function
// so that tiny tail weights keep full relative accuracy.
// Throws std::invalid_argument unless 1 <= order <= kMaxQuadratureOrder.
QuadratureRule gauss_hermite(int order);

// Probabilists' Hermite polynomial He_n(x).
double hermite_he(int n, double x);

// E[X^k] for X ~ N(0,1): zero for odd k, (k-1)!! for even k.
double gaussian_moment(int k);

double normal_pdf(double x);
double normal_cdf(double x);
// Upper tail Q(x) = 1 - Phi(x), accurate far into the tail.
double normal_upper_tail(double x);
// Inverse of the upper tail: the x with Q(x) = p, for 0 < p < 1.
double normal_upper_quantile(double p);
// Standard normal density in R^d evaluated at x.
double normal_density(const Eigen::VectorXd& x);

// count i.i.d. N(0, I_dim) vectors as the columns of a dim x count matrix.
// Deterministic in seed and independent of the worker count.
Eigen::MatrixXd sample_gaussian(int dim, std::size_t count, std::uint64_t seed);

template <class F>
double QuadratureRule::integrate(F&& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
  return s;
}

}  // namespace oulab::gauss
