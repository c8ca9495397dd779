#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "oulab/domain.hpp"
#include "oulab/inequalities.hpp"
#include "oulab/report.hpp"
#include "oulab/testfn.hpp"

namespace oulab {

// Orthogonal projection of R^ambient_dim onto its first base_dim coordinates.
class ProjectionSpec {
 public:
  ProjectionSpec(int ambient_dim, int base_dim);
  int ambient_dim() const { return ambient_; }
  int base_dim() const { return base_; }
  int free_dims() const { return ambient_ - base_; }
  // pi(x) as a point of R^base_dim.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  // pi(x) embedded back in R^ambient_dim (the idempotent map).
  Eigen::VectorXd embed(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd matrix() const;  // ambient x ambient, rank base_dim

 private:
  int ambient_;
  int base_;
};

// Monte Carlo on base x R^free_dims against the grid solution on the base:
// compares T(t)(v o pi)(x) with (T_base(t) v)(pi x) over a panel of points of
// the product. Reports the worst point; tolerance 3 se + bias allowance +
// grid interpolation allowance.
InequalityReport factorization_check(const CylFunction& v, const ConvexDomain& base,
                                     int free_dims, double t, const Budget& budget,
                                     std::uint64_t seed,
                                     std::optional<Eigen::MatrixXd> panel = std::nullopt);

struct ConvergenceOptions {
  std::size_t points = 200;   // restricted samples of the ball
  std::size_t paths = 500;    // reflected paths per point and domain
  double step = 1e-3;
};

struct ConvergenceRow {
  int n = 0;
  double error = 0.0;       // L2 distance over the ball, debiased
  double std_error = 0.0;
  double excess_mass = 0.0; // gamma(polygon) - gamma(ball)
};

// Gaussian mass of a disc, exact.
double disc_mass(const ConvexDomain& ball);
// Gaussian mass of the circumscribed regular n-gon of a centred disc, by
// polar quadrature.
double polygon_mass(const ConvexDomain& ball, int n);

// For each n, the L2(gamma restricted to the ball) distance between T(t)f on
// the circumscribed n-gon and on the ball. Paths for different domains share
// their increments. Centred balls only.
std::vector<ConvergenceRow> convergence_study(const ConvexDomain& ball, const CylFunction& f,
                                              double t, const std::vector<int>& n_list,
                                              const ConvergenceOptions& options,
                                              std::uint64_t seed);

}  // namespace oulab
