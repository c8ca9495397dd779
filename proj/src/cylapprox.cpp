#include "oulab/cylapprox.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "oulab/error.hpp"
#include "oulab/grid.hpp"
#include "oulab/montecarlo.hpp"
#include "oulab/rng.hpp"
#include "oulab/sampling.hpp"
#include "oulab/stats.hpp"

namespace oulab {

ProjectionSpec::ProjectionSpec(int ambient_dim, int base_dim)
    : ambient_(ambient_dim), base_(base_dim) {
  if (base_dim < 1 || base_dim > ambient_dim)
    throw std::invalid_argument("base dimension must lie in [1, ambient dimension]");
}

Eigen::VectorXd ProjectionSpec::apply(const Eigen::VectorXd& x) const {
  if (x.size() != ambient_) throw DimensionMismatch(ambient_, static_cast<int>(x.size()));
  return x.head(base_);
}

Eigen::VectorXd ProjectionSpec::embed(const Eigen::VectorXd& x) const {
  if (x.size() != ambient_) throw DimensionMismatch(ambient_, static_cast<int>(x.size()));
  Eigen::VectorXd y = Eigen::VectorXd::Zero(ambient_);
  y.head(base_) = x.head(base_);
  return y;
}

Eigen::MatrixXd ProjectionSpec::matrix() const {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(ambient_, ambient_);
  p.topLeftCorner(base_, base_).setIdentity();
  return p;
}

InequalityReport factorization_check(const CylFunction& v, const ConvexDomain& base,
                                     int free_dims, double t, const Budget& budget,
                                     std::uint64_t seed, std::optional<Eigen::MatrixXd> panel) {
  if (v.dim() != base.dim()) throw DimensionMismatch(base.dim(), v.dim());
  if (free_dims < 1 || free_dims > 3) throw std::invalid_argument("free dims must lie in [1, 3]");
  const ProjectionSpec pi(base.dim() + free_dims, base.dim());
  const ConvexDomain product = ConvexDomain::product(base, free_dims);
  const CylFunction lifted = lift(v, pi.ambient_dim());
  const Eigen::MatrixXd points = panel ? *panel : default_panel(product, budget, seed);
  if (points.rows() != pi.ambient_dim())
    throw DimensionMismatch(pi.ambient_dim(), static_cast<int>(points.rows()));

  const GridOperator op = grid_build(base, budget.resolution, budget.tail_mass);
  const GridFunction u = grid_apply(op, op.sample(v), t, budget.scheme);
  double dx2 = 0.0;
  for (int a = 0; a < op.dim(); ++a) dx2 = std::max(dx2, op.spacing(a) * op.spacing(a));
  const double lip = lipschitz_bound(v, base, budget.tail_mass);
  const double bias = bias_allowance(lifted, product, budget);
  const double grid_allow = budget.grid_constant * dx2 * lip;

  InequalityReport worst;
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (Eigen::Index p = 0; p < points.cols(); ++p) {
    const Eigen::VectorXd x = points.col(p);
    const SemigroupEstimate a = mc_apply(lifted, product, t, x, budget.paths, budget.step,
                                         derive_seed(seed, static_cast<std::uint64_t>(p)));
    const double b = op.interpolate(u, pi.apply(x));
    const double tol = 3.0 * a.std_error.value_or(0.0) + bias + grid_allow;
    const double gap = std::abs(a.value - b);
    if (gap - tol > worst_excess) {
      worst_excess = gap - tol;
      worst = make_report("factorization", gap, 0.0, tol);
      worst.note("worst_point", static_cast<double>(p));
      worst.note("mc_value", a.value);
      worst.note("mc_se", a.std_error.value_or(0.0));
      worst.note("grid_value", b);
    }
  }
  worst.note("engine", "monte_carlo+grid");
  worst.note("free_dims", static_cast<double>(free_dims));
  worst.note("t", t);
  worst.note("paths", static_cast<double>(budget.paths));
  worst.note("step", budget.step);
  worst.note("nodes", static_cast<double>(op.size()));
  worst.note("bias_allowance", bias);
  worst.note("grid_allowance", grid_allow);
  worst.note("panel_points", static_cast<double>(points.cols()));
  worst.note("tolerance_rule", "3*mc_se+bias_allowance+grid_allowance");
  return worst;
}

namespace {

const Ball& centred_disc(const ConvexDomain& ball) {
  if (ball.dim() != 2) throw UnsupportedDimension(ball.dim());
  const auto* b = std::get_if<Ball>(&ball.shape());
  if (b == nullptr) throw std::invalid_argument("expected a ball");
  if (b->center.norm() != 0.0) throw std::invalid_argument("expected a centred ball");
  return *b;
}

}  // namespace

double disc_mass(const ConvexDomain& ball) {
  const Ball& b = centred_disc(ball);
  return -std::expm1(-0.5 * b.radius * b.radius);
}

double polygon_mass(const ConvexDomain& ball, int n) {
  const Ball& b = centred_disc(ball);
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 sides");
  // Mass of one face sector: integral over |phi| <= pi/n of
  // (1 - exp(-rho(phi)^2 / 2)) / (2 pi), rho = r / cos(phi). Composite Simpson.
  const double half = std::numbers::pi / n;
  const int panels = 4096;
  const double h = 2.0 * half / panels;
  auto g = [&](double phi) {
    const double rho = b.radius / std::cos(phi);
    return -std::expm1(-0.5 * rho * rho);
  };
  CompensatedSum s;
  for (int k = 0; k <= panels; ++k) {
    const double w = (k == 0 || k == panels) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    s.add(w * g(-half + h * k));
  }
  const double sector = s.value() * h / 3.0 / (2.0 * std::numbers::pi);
  return n * sector;
}

std::vector<ConvergenceRow> convergence_study(const ConvexDomain& ball, const CylFunction& f,
                                              double t, const std::vector<int>& n_list,
                                              const ConvergenceOptions& options,
                                              std::uint64_t seed) {
  centred_disc(ball);
  if (f.dim() != 2) throw DimensionMismatch(2, f.dim());
  for (std::size_t k = 1; k < n_list.size(); ++k)
    if (n_list[k] <= n_list[k - 1]) throw std::invalid_argument("n_list must be increasing");
  if (options.points < 2 || options.paths < 2)
    throw std::invalid_argument("need at least 2 points and 2 paths");

  const Eigen::MatrixXd points =
      gauss::restricted_sample(ball, options.points, derive_seed(seed, 1)).points;
  const std::uint64_t path_root = derive_seed(seed, 2);
  const auto n_points = static_cast<std::size_t>(points.cols());

  std::vector<std::vector<double>> reference(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const Eigen::MatrixXd ends =
        reflected_endpoints(ball, points.col(static_cast<Eigen::Index>(i)), t, options.paths,
                            options.step, derive_seed(path_root, i));
    reference[i] = evaluate_columns(f, ends);
  }

  const double ball_mass = disc_mass(ball);
  std::vector<ConvergenceRow> rows;
  for (int n : n_list) {
    const ConvexDomain poly = polygon_approximation(ball, n);
    // Per point: squared mean difference minus its sampling variance.
    std::vector<double> q(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
      const Eigen::MatrixXd ends =
          reflected_endpoints(poly, points.col(static_cast<Eigen::Index>(i)), t, options.paths,
                              options.step, derive_seed(path_root, i));
      const std::vector<double> vals = evaluate_columns(f, ends);
      std::vector<double> diff(vals.size());
      for (std::size_t j = 0; j < vals.size(); ++j) diff[j] = vals[j] - reference[i][j];
      const Estimate d = mean_estimate(diff);
      q[i] = d.value * d.value - d.std_error * d.std_error;
    }
    const Estimate e2 = mean_estimate(q);
    ConvergenceRow row;
    row.n = n;
    row.error = std::sqrt(std::max(0.0, e2.value));
    row.std_error = row.error > 0.0 ? std::min(std::sqrt(e2.std_error), e2.std_error / (2.0 * row.error))
                                    : std::sqrt(e2.std_error);
    row.excess_mass = polygon_mass(ball, n) - ball_mass;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace oulab
