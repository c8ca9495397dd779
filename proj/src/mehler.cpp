#include "oulab/mehler.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oulab/error.hpp"
#include "oulab/gauss.hpp"
#include "oulab/stats.hpp"

namespace oulab {

std::string to_string(Method m) {
  switch (m) {
    case Method::Mehler: return "mehler";
    case Method::MonteCarlo: return "monte_carlo";
    case Method::Grid: return "grid";
  }
  return "unknown";
}

SemigroupEstimate mehler_apply(const CylFunction& f, double t, const Eigen::VectorXd& x,
                               const MehlerOptions& options) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be nonnegative");
  if (x.size() != f.dim()) throw DimensionMismatch(f.dim(), static_cast<int>(x.size()));
  if (!f.bounded() && !f.is_polynomial())
    throw std::invalid_argument("Mehler oracle needs a bounded-flagged or polynomial function");

  const int k = f.arity();
  const double decay = std::exp(-t);
  const double spread = std::sqrt(-std::expm1(-2.0 * t));
  const Eigen::MatrixXd& l = f.directions();
  const Eigen::VectorXd centre = decay * (l * x);
  if (k == 0 || spread == 0.0) {
    std::vector<double> p(centre.data(), centre.data() + k);
    return {f.eval_profile(p), std::nullopt, Method::Mehler, t};
  }

  // l Y ~ N(0, G) with G = l l^T = V diag(lambda) V^T; keep the nonzero modes.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(l * l.transpose());
  const double cutoff = 1e-12 * std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<Eigen::VectorXd> modes;
  for (int i = 0; i < k; ++i) {
    const double lambda = eig.eigenvalues()[i];
    if (lambda > cutoff) modes.push_back(std::sqrt(lambda) * eig.eigenvectors().col(i));
  }
  const int rank = static_cast<int>(modes.size());
  const auto rule = gauss::gauss_hermite(options.quad_order);
  const std::size_t n = rule.size();
  double points = 1.0;
  for (int r = 0; r < rank; ++r) points *= static_cast<double>(n);
  if (points > static_cast<double>(options.point_budget)) {
    throw OrderTooHigh("Mehler quadrature needs " + std::to_string(points) +
                       " points, budget is " + std::to_string(options.point_budget));
  }

  std::vector<std::size_t> idx(static_cast<std::size_t>(rank), 0);
  std::vector<double> proj(static_cast<std::size_t>(k));
  CompensatedSum sum;
  while (true) {
    double w = 1.0;
    Eigen::VectorXd p = centre;
    for (int r = 0; r < rank; ++r) {
      const std::size_t i = idx[static_cast<std::size_t>(r)];
      w *= rule.weights[i];
      p += spread * rule.nodes[i] * modes[static_cast<std::size_t>(r)];
    }
    for (int i = 0; i < k; ++i) proj[static_cast<std::size_t>(i)] = p[i];
    if (w > 0.0) sum.add(w * f.eval_profile(proj));
    int r = 0;
    for (; r < rank; ++r) {
      if (++idx[static_cast<std::size_t>(r)] < n) break;
      idx[static_cast<std::size_t>(r)] = 0;
    }
    if (r == rank) break;
  }
  return {sum.value(), std::nullopt, Method::Mehler, t};
}

}  // namespace oulab
