#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "oulab/domain.hpp"
#include "oulab/grid.hpp"
#include "oulab/report.hpp"
#include "oulab/testfn.hpp"

namespace oulab {

// Sample sizes and discretisation settings shared by the checks.
//
// Integrals are taken against the Gaussian measure conditioned on the domain,
// so the mass of the domain never enters an inequality. Poincare is
// homogeneous and unaffected; for log-Sobolev this is the form in which
// constants are extremal.
struct Budget {
  std::size_t samples = 1'000'000;  // restricted samples for integrals
  std::size_t paths = 100'000;      // reflected paths per point
  double step = 1e-3;               // projected Euler step
  std::vector<int> resolution{400};
  double tail_mass = 1e-12;
  int quad_order = 40;
  Scheme scheme = Scheme::Expm;
  std::size_t panel_size = 20;
  // Monte Carlo bias allowance: bias_constant * L * sqrt(step) on reflecting
  // domains and bias_constant * L * step on the whole space, with L a
  // Lipschitz bound of the integrand over the truncation box.
  double bias_constant = 1.5;
  // Grid allowance: grid_constant * spacing^2 * scale, scale set per check.
  double grid_constant = 4.0;
};

// Sup of |grad f| over the truncation box of the domain, from interval
// enclosures; +inf when the enclosure is unbounded.
double lipschitz_bound(const CylFunction& f, const ConvexDomain& domain, double tail_mass);

// True unless the reflected process never touches a boundary (whole space,
// or a product over the whole space).
bool reflects(const ConvexDomain& domain);

// Systematic Monte Carlo error allowance for E f(X_t), see Budget.
double bias_allowance(const CylFunction& f, const ConvexDomain& domain, const Budget& budget);

// Points of a check panel: budget.panel_size restricted samples.
Eigen::MatrixXd default_panel(const ConvexDomain& domain, const Budget& budget,
                              std::uint64_t seed);

// Var(f) <= E|grad f|^2. Tolerance 3 standard errors of the paired
// difference, per-sample influence |grad f|^2 - (f - mean)^2.
InequalityReport check_poincare(const CylFunction& f, const ConvexDomain& domain,
                                const Budget& budget, std::uint64_t seed);

// E[f^2 log|f|] <= E|grad f|^2 + |f|^2 log|f|, |f| the L2 norm.
// The doubled form with log f^2 appears in details as lhs2/rhs2.
// |f| is clipped at 1e-12 inside the logarithm; the clip count is reported.
InequalityReport check_logsob(const CylFunction& f, const ConvexDomain& domain,
                              const Budget& budget, std::uint64_t seed);

// |grad T(t) f| <= e^{-t} T(t)|grad f| at every interior node of the mesh.
// The left side uses central differences of the grid solution.
InequalityReport check_gradient_bound(const CylFunction& f, const ConvexDomain& domain, double t,
                                      const Budget& budget);

// (T(t)(fg))^2 <= T(t)(f^2) T(t)(g^2) at every panel point, all three means
// from the same reflected paths. Reports the worst point.
InequalityReport check_submultiplicative(const CylFunction& f, const CylFunction& g,
                                         const ConvexDomain& domain, double t,
                                         const Eigen::MatrixXd& panel, const Budget& budget,
                                         std::uint64_t seed);
// Several pairs over one set of paths per panel point; one report per pair.
std::vector<InequalityReport> check_submultiplicative(
    const std::vector<std::pair<CylFunction, CylFunction>>& pairs, const ConvexDomain& domain,
    double t, const Eigen::MatrixXd& panel, const Budget& budget, std::uint64_t seed);

// |E T(t)f - E f| under the conditioned measure, two-sided. Starting points
// are restricted samples with one reflected path each, so the difference is
// paired.
InequalityReport check_invariance(const CylFunction& f, const ConvexDomain& domain, double t,
                                  const Budget& budget, std::uint64_t seed);
// The same identity on the mesh: |sum W T(t)f - sum W f| <= 1e-9 max(1, |f|_W).
InequalityReport check_invariance_grid(const CylFunction& f, const ConvexDomain& domain,
                                       double t, const Budget& budget);

// |T(t)f - m(f)| <= e^{-t}|f| in L2 of the weighted mesh, one report per t.
// Tolerance 1e-4 |f|.
std::vector<InequalityReport> check_decay(const CylFunction& f, const ConvexDomain& domain,
                                          const std::vector<double>& times, const Budget& budget);

// On the mesh: min T(t)f >= -1e-10 when f >= 0 at the nodes, the range of
// T(t)f stays within that of f, and |T(t)f|_W <= |f|_W, all to 1e-10.
// lhs is the largest violation, rhs 0.
InequalityReport check_positivity_and_contraction(const CylFunction& f,
                                                  const ConvexDomain& domain, double t,
                                                  const Budget& budget);

// Mehler, grid and Monte Carlo values of T(t)f on the whole space, compared
// pairwise at every panel point; three reports (mehler_grid, mehler_mc,
// grid_mc), each for the worst point. Tolerances: grid_constant * dx^2 * L
// for the grid, 3 se + bias allowance for Monte Carlo, summed when both enter.
std::vector<InequalityReport> oracle_triangle(const CylFunction& f, int dim, double t,
                                              const Eigen::MatrixXd& panel, const Budget& budget,
                                              std::uint64_t seed);

// Entropy of T(t)phi, phi = f^2, along a time grid on the mesh.
struct EntropyTrace {
  std::vector<double> times;
  std::vector<double> entropy;     // E[T phi log T phi]
  std::vector<double> production;  // (S(t + delta) - S(t)) / delta
  std::vector<double> bound;       // -e^{-2t} E[|grad phi|^2 / phi]
  double delta = 0.0;
  double limit = 0.0;              // m(phi) log m(phi)
  double terminal = 0.0;           // S at the last time
  // production >= bound - tolerance at every time.
  InequalityReport production_report;
  // 0 <= terminal - limit <= tolerance (two-sided report on the defect).
  InequalityReport limit_report;
};

// times must be increasing and nonnegative. delta defaults to the spacing of
// the first two times. Throws BelowFloor if min f < floor on the mesh.
EntropyTrace entropy_trace(const CylFunction& f, const ConvexDomain& domain,
                           const std::vector<double>& times, const Budget& budget,
                           double floor, std::optional<double> delta = std::nullopt);

// 40 equally spaced times 0, 0.1, ..., 3.9.
std::vector<double> default_entropy_times();

}  // namespace oulab
