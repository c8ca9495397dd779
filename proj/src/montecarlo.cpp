#include "oulab/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

#include "oulab/error.hpp"
#include "oulab/parallel.hpp"
#include "oulab/rng.hpp"
#include "oulab/stats.hpp"

namespace oulab {

namespace {

void check_path_args(const ConvexDomain& domain, const Eigen::VectorXd& x0, double t, double h) {
  if (x0.size() != domain.dim()) throw DimensionMismatch(domain.dim(), static_cast<int>(x0.size()));
  if (!(t >= 0.0)) throw std::invalid_argument("time must be nonnegative");
  if (!(h > 0.0)) throw std::invalid_argument("step must be positive");
  if (!domain.contains(x0)) throw std::invalid_argument("start point lies outside the domain");
}

// Path driven by `normal`, written into x in place.
void run_path(const ConvexDomain& domain, Eigen::VectorXd& x, double t, double h,
              NormalStream& normal, bool free) {
  if (t == 0.0) return;
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(t / h - 1e-9)));
  for (std::size_t s = 0; s < steps; ++s) {
    const double dt = (s + 1 == steps) ? t - static_cast<double>(steps - 1) * h : h;
    const double decay = 1.0 - dt;
    const double noise = std::sqrt(2.0 * dt);
    for (Eigen::Index d = 0; d < x.size(); ++d) x[d] = decay * x[d] + noise * normal();
    if (!free && !domain.contains(x, 0.0)) x = domain.project(x);
  }
}

}  // namespace

Eigen::VectorXd reflected_path(const ConvexDomain& domain, const Eigen::VectorXd& x0, double t,
                               double h, std::uint64_t seed) {
  check_path_args(domain, x0, t, h);
  Eigen::VectorXd x = x0;
  NormalStream normal(seed);
  run_path(domain, x, t, h, normal, domain.is_whole_space());
  return x;
}

Eigen::MatrixXd reflected_endpoints(const ConvexDomain& domain, const Eigen::VectorXd& x0,
                                    double t, std::size_t n_paths, double h, std::uint64_t seed) {
  check_path_args(domain, x0, t, h);
  Eigen::MatrixXd out(domain.dim(), static_cast<Eigen::Index>(n_paths));
  const bool free = domain.is_whole_space();
  parallel_for(n_paths, [&](std::size_t begin, std::size_t end) {
    Eigen::VectorXd x(domain.dim());
    for (std::size_t i = begin; i < end; ++i) {
      x = x0;
      NormalStream normal(derive_seed(seed, i));
      run_path(domain, x, t, h, normal, free);
      out.col(static_cast<Eigen::Index>(i)) = x;
    }
  });
  return out;
}

Eigen::MatrixXd reflected_endpoints_from(const ConvexDomain& domain, const Eigen::MatrixXd& starts,
                                         double t, double h, std::uint64_t seed) {
  if (starts.rows() != domain.dim())
    throw DimensionMismatch(domain.dim(), static_cast<int>(starts.rows()));
  for (Eigen::Index j = 0; j < starts.cols(); ++j) check_path_args(domain, starts.col(j), t, h);
  Eigen::MatrixXd out = starts;
  const bool free = domain.is_whole_space();
  parallel_for(static_cast<std::size_t>(starts.cols()), [&](std::size_t begin, std::size_t end) {
    Eigen::VectorXd x(domain.dim());
    for (std::size_t j = begin; j < end; ++j) {
      x = starts.col(static_cast<Eigen::Index>(j));
      NormalStream normal(derive_seed(seed, j));
      run_path(domain, x, t, h, normal, free);
      out.col(static_cast<Eigen::Index>(j)) = x;
    }
  });
  return out;
}

std::vector<double> evaluate_columns(const CylFunction& f, const Eigen::MatrixXd& points) {
  std::vector<double> v(static_cast<std::size_t>(points.cols()));
  parallel_for(v.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) v[i] = f.eval(points.col(static_cast<Eigen::Index>(i)));
  });
  return v;
}

SemigroupEstimate mc_apply(const CylFunction& f, const ConvexDomain& domain, double t,
                           const Eigen::VectorXd& x, std::size_t n_paths, double h,
                           std::uint64_t seed) {
  if (f.dim() != domain.dim()) throw DimensionMismatch(domain.dim(), f.dim());
  if (n_paths == 0) throw std::invalid_argument("need at least one path");
  const Eigen::MatrixXd ends = reflected_endpoints(domain, x, t, n_paths, h, seed);
  const Estimate e = mean_estimate(evaluate_columns(f, ends));
  return {e.value, e.std_error, Method::MonteCarlo, t};
}

}  // namespace oulab
