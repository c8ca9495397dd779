#pragma once

#include <Eigen/Dense>
#include <string_view>
#include <vector>

#include "oulab/domain.hpp"
#include "oulab/expr.hpp"

namespace oulab {

// f(x) = profile(l_1 . x, ..., l_k . x): a cylindrical function with an exact
// gradient sum_i d_i profile(l . x) l_i.
class CylFunction {
 public:
  // directions is k x dim, one row per l_i; the profile may reference only v1..vk.
  CylFunction(int dim, Eigen::MatrixXd directions, Expr profile, bool bounded = false);

  static CylFunction parse(int dim, Eigen::MatrixXd directions, std::string_view profile,
                           bool bounded = false);
  static CylFunction constant(int dim, double c);
  // x_{axis} (zero-based axis).
  static CylFunction coordinate(int dim, int axis);

  int dim() const { return dim_; }
  int arity() const { return static_cast<int>(directions_.rows()); }
  const Eigen::MatrixXd& directions() const { return directions_; }
  const Expr& profile() const { return profile_; }
  // User-declared boundedness; see verify_bounded.
  bool bounded() const { return bounded_; }
  bool is_polynomial() const { return profile_.is_polynomial(); }

  double operator()(const Eigen::VectorXd& x) const { return eval(x); }
  double eval(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  double gradient_norm(const Eigen::VectorXd& x) const { return gradient(x).norm(); }
  // Profile and its partials on given projections l . x.
  double eval_profile(std::span<const double> projections) const;

  // Enclosure of f over a box, by interval evaluation of the profile.
  Interval enclose(const Box& box) const;
  // Enclosure of each gradient component over a box.
  std::vector<Interval> enclose_gradient(const Box& box) const;

 private:
  std::vector<double> projections(const Eigen::VectorXd& x) const;
  std::vector<Interval> projection_ranges(const Box& box) const;

  friend CylFunction lift(const CylFunction& f, int ambient_dim);

  int dim_;
  // Number of leading coordinates any direction touches. Projections sum over
  // them in order, so lifting is exact.
  int support_;
  Eigen::MatrixXd directions_;
  Expr profile_;
  std::vector<Expr> partials_;
  bool bounded_;
};

// f composed with the projection of R^ambient_dim onto its first f.dim() coordinates.
CylFunction lift(const CylFunction& f, int ambient_dim);

// Boundedness of a declared-bounded function: f is bounded on all of R^dim
// (interval evaluation with unbounded inputs) and f and its gradient have
// finite enclosures on the box.
bool verify_bounded(const CylFunction& f, const Box& box);

}  // namespace oulab
