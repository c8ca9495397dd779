#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "oulab/semigroup.hpp"
#include "oulab/testfn.hpp"

namespace oulab {

struct MehlerOptions {
  int quad_order = 40;
  // Cap on the number of tensor quadrature points.
  std::size_t point_budget = 1'000'000;
};

// Whole-space T(t)f(x) = E f(e^{-t} x + sqrt(1 - e^{-2t}) Y), Y ~ N(0, I).
// The cylindrical structure reduces this to a Gaussian integral over the rank
// of the Gram matrix of the directions, evaluated by tensor Gauss-Hermite.
// f must be bounded-flagged or polynomial. Throws OrderTooHigh past the budget.
SemigroupEstimate mehler_apply(const CylFunction& f, double t, const Eigen::VectorXd& x,
                               const MehlerOptions& options = {});

}  // namespace oulab
