#include "oulab/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "oulab/parallel.hpp"
#include "oulab/rng.hpp"
#include "oulab/stats.hpp"

namespace oulab::gauss {

namespace {

// Orthonormal Hermite values psi_{n}(x), psi_{n-1}(x) w.r.t. the standard normal.
std::pair<double, double> orthonormal_hermite(int n, double x) {
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = (x * cur - std::sqrt(static_cast<double>(k)) * prev) /
                        std::sqrt(static_cast<double>(k + 1));
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

constexpr std::size_t kSampleBlock = 4096;

}  // namespace

QuadratureRule gauss_hermite(int order) {
  if (order < 1 || order > kMaxQuadratureOrder) {
    throw std::invalid_argument("Gauss-Hermite order must lie in [1, " +
                                std::to_string(kMaxQuadratureOrder) + "]");
  }
  QuadratureRule rule;
  if (order == 1) {
    rule.nodes = {0.0};
    rule.weights = {1.0};
    return rule;
  }
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub(order - 1);
  for (int i = 0; i < order - 1; ++i) sub[i] = std::sqrt(static_cast<double>(i + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Golub-Welsch eigensolve failed");

  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double sqrt_n = std::sqrt(static_cast<double>(order));
  for (int i = 0; i < order; ++i) {
    double x = solver.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      const auto [pn, pn1] = orthonormal_hermite(order, x);
      const double deriv = sqrt_n * pn1;
      if (deriv == 0.0 || !std::isfinite(pn) || !std::isfinite(deriv)) break;
      x -= pn / deriv;
    }
    // Christoffel function: 1 / sum_{k<n} psi_k(x)^2.
    double prev = 0.0;
    double cur = 1.0;
    double christoffel = 1.0;
    for (int k = 0; k + 1 < order; ++k) {
      const double next = (x * cur - std::sqrt(static_cast<double>(k)) * prev) /
                          std::sqrt(static_cast<double>(k + 1));
      prev = cur;
      cur = next;
      christoffel += cur * cur;
    }
    rule.nodes[i] = x;
    // Far-tail weights of very high orders underflow; they are kept at the
    // smallest positive double so every weight stays positive.
    const double w = std::isfinite(christoffel) ? 1.0 / christoffel : 0.0;
    rule.weights[i] = std::max(w, std::numeric_limits<double>::denorm_min());
  }
  // Exact symmetry of the rule.
  for (int i = 0; i < order / 2; ++i) {
    const int j = order - 1 - i;
    const double node = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double weight = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -node;
    rule.nodes[j] = node;
    rule.weights[i] = rule.weights[j] = weight;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  CompensatedSum total;
  for (double w : rule.weights) total.add(w);
  for (double& w : rule.weights) w = std::max(w / total.value(), std::numeric_limits<double>::denorm_min());
  return rule;
}

double hermite_he(int n, double x) {
  if (n < 0) throw std::invalid_argument("Hermite degree must be nonnegative");
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double gaussian_moment(int k) {
  if (k < 0) throw std::invalid_argument("moment order must be nonnegative");
  if (k % 2 == 1) return 0.0;
  double m = 1.0;
  for (int j = k - 1; j > 1; j -= 2) m *= j;
  return m;
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_upper_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double normal_upper_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("tail probability must lie in (0, 1)");
  // Bisection on a bracket, then Newton polish; Q is smooth and monotone.
  double lo = -40.0;
  double hi = 40.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (normal_upper_tail(mid) > p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 2; ++it) {
    const double d = normal_pdf(x);
    if (d <= 0.0) break;
    x += (normal_upper_tail(x) - p) / d;
  }
  return x;
}

double normal_density(const Eigen::VectorXd& x) {
  return std::exp(-0.5 * x.squaredNorm()) /
         std::pow(2.0 * std::numbers::pi, 0.5 * static_cast<double>(x.size()));
}

Eigen::MatrixXd sample_gaussian(int dim, std::size_t count, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  Eigen::MatrixXd out(dim, static_cast<Eigen::Index>(count));
  const std::size_t blocks = (count + kSampleBlock - 1) / kSampleBlock;
  parallel_for(blocks, [&](std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b) {
      NormalStream normal(derive_seed(seed, b));
      const std::size_t first = b * kSampleBlock;
      const std::size_t last = std::min(count, first + kSampleBlock);
      for (std::size_t c = first; c < last; ++c)
        for (int d = 0; d < dim; ++d) out(d, static_cast<Eigen::Index>(c)) = normal();
    }
  });
  return out;
}

}  // namespace oulab::gauss
