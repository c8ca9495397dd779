#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "oulab/domain.hpp"
#include "oulab/semigroup.hpp"
#include "oulab/testfn.hpp"

namespace oulab {

inline constexpr double kDefaultStep = 1e-3;

// Projected Euler path of the normally reflected OU diffusion
// dX = -X dt + sqrt(2) dW started at x0:
//   X <- project(X (1 - h_k) + sqrt(2 h_k) xi),
// with ceil(t/h) steps, the last one shortened to land on t.
// Throws std::invalid_argument if x0 is outside the closed domain.
Eigen::VectorXd reflected_path(const ConvexDomain& domain, const Eigen::VectorXd& x0, double t,
                               double h, std::uint64_t seed);

// Endpoints of n_paths reflected paths (columns). Path i is driven by the
// stream derive_seed(seed, i), so two domains given the same seed share
// their Brownian increments.
Eigen::MatrixXd reflected_endpoints(const ConvexDomain& domain, const Eigen::VectorXd& x0,
                                    double t, std::size_t n_paths, double h, std::uint64_t seed);

// One path per start point (columns of starts); path j uses derive_seed(seed, j).
Eigen::MatrixXd reflected_endpoints_from(const ConvexDomain& domain, const Eigen::MatrixXd& starts,
                                         double t, double h, std::uint64_t seed);

// E f(X_t^x) with standard error sd / sqrt(n_paths).
SemigroupEstimate mc_apply(const CylFunction& f, const ConvexDomain& domain, double t,
                           const Eigen::VectorXd& x, std::size_t n_paths, double h,
                           std::uint64_t seed);

// f evaluated at each column of points.
std::vector<double> evaluate_columns(const CylFunction& f, const Eigen::MatrixXd& points);

}  // namespace oulab
