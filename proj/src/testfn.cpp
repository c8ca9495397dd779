#include "oulab/testfn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "oulab/error.hpp"

namespace oulab {

CylFunction::CylFunction(int dim, Eigen::MatrixXd directions, Expr profile, bool bounded)
    : dim_(dim), support_(0), directions_(std::move(directions)), profile_(std::move(profile)),
      bounded_(bounded) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  if (directions_.cols() != dim) throw DimensionMismatch(dim, static_cast<int>(directions_.cols()));
  if (profile_.arity() > directions_.rows()) {
    throw std::invalid_argument("profile references v" + std::to_string(profile_.arity()) +
                                " but only " + std::to_string(directions_.rows()) +
                                " directions are given");
  }
  for (int j = 0; j < dim; ++j)
    if (!directions_.col(j).isZero(0.0)) support_ = j + 1;
  for (int i = 0; i < directions_.rows(); ++i) partials_.push_back(profile_.derivative(i));
}

CylFunction CylFunction::parse(int dim, Eigen::MatrixXd directions, std::string_view profile,
                               bool bounded) {
  return CylFunction(dim, std::move(directions), Expr::parse(profile), bounded);
}

CylFunction CylFunction::constant(int dim, double c) {
  return CylFunction(dim, Eigen::MatrixXd::Zero(0, dim), Expr::constant(c), true);
}

CylFunction CylFunction::coordinate(int dim, int axis) {
  if (axis < 0 || axis >= dim) throw std::out_of_range("axis out of range");
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(1, dim);
  l(0, axis) = 1.0;
  return CylFunction(dim, l, Expr::variable(0));
}

std::vector<double> CylFunction::projections(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw DimensionMismatch(dim_, static_cast<int>(x.size()));
  std::vector<double> p(static_cast<std::size_t>(directions_.rows()), 0.0);
  for (int i = 0; i < directions_.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < support_; ++j) s += directions_(i, j) * x[j];
    p[static_cast<std::size_t>(i)] = s;
  }
  return p;
}

double CylFunction::eval(const Eigen::VectorXd& x) const {
  const auto p = projections(x);
  return profile_.evaluate(p);
}

double CylFunction::eval_profile(std::span<const double> projections) const {
  return profile_.evaluate(projections);
}

Eigen::VectorXd CylFunction::gradient(const Eigen::VectorXd& x) const {
  const auto p = projections(x);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(dim_);
  for (int i = 0; i < directions_.rows(); ++i) {
    const double d = partials_[static_cast<std::size_t>(i)].evaluate(p);
    for (int j = 0; j < support_; ++j) g[j] += d * directions_(i, j);
  }
  return g;
}

std::vector<Interval> CylFunction::projection_ranges(const Box& box) const {
  if (box.lower.size() != dim_) throw DimensionMismatch(dim_, static_cast<int>(box.lower.size()));
  std::vector<Interval> ranges;
  for (int i = 0; i < directions_.rows(); ++i) {
    Interval r{0.0, 0.0};
    for (int j = 0; j < dim_; ++j) {
      const double l = directions_(i, j);
      if (l == 0.0) continue;
      const double a = l * (l > 0 ? box.lower[j] : box.upper[j]);
      const double b = l * (l > 0 ? box.upper[j] : box.lower[j]);
      r = {r.lo + a, r.hi + b};
    }
    ranges.push_back(r);
  }
  return ranges;
}

Interval CylFunction::enclose(const Box& box) const {
  return profile_.enclose(projection_ranges(box));
}

std::vector<Interval> CylFunction::enclose_gradient(const Box& box) const {
  const auto ranges = projection_ranges(box);
  std::vector<Interval> partial_ranges;
  for (const auto& p : partials_) partial_ranges.push_back(p.enclose(ranges));
  std::vector<Interval> out;
  for (int j = 0; j < dim_; ++j) {
    Interval g{0.0, 0.0};
    for (int i = 0; i < directions_.rows(); ++i) {
      const double l = directions_(i, j);
      const Interval& d = partial_ranges[static_cast<std::size_t>(i)];
      if (l == 0.0) continue;
      const double a = l > 0 ? l * d.lo : l * d.hi;
      const double b = l > 0 ? l * d.hi : l * d.lo;
      g = {g.lo + a, g.hi + b};
    }
    out.push_back(g);
  }
  return out;
}

CylFunction lift(const CylFunction& f, int ambient_dim) {
  if (ambient_dim < f.dim()) throw std::invalid_argument("ambient dimension below base dimension");
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(f.directions().rows(), ambient_dim);
  l.leftCols(f.dim()) = f.directions();
  return CylFunction(ambient_dim, l, f.profile(), f.bounded());
}

bool verify_bounded(const CylFunction& f, const Box& box) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const Box everywhere{Eigen::VectorXd::Constant(f.dim(), -kInf),
                       Eigen::VectorXd::Constant(f.dim(), kInf)};
  if (!f.enclose(everywhere).finite()) return false;
  if (!f.enclose(box).finite()) return false;
  for (const auto& g : f.enclose_gradient(box))
    if (!g.finite()) return false;
  return true;
}

}  // namespace oulab
