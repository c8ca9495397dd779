#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "oulab/domain.hpp"
#include "oulab/testfn.hpp"

namespace oulab {

// Values on the active nodes of a GridOperator mesh.
using GridFunction = Eigen::VectorXd;

// Link between two active neighbours along one axis. conductance is the
// symmetric off-diagonal entry of W A.
struct GridFace {
  std::size_t a = 0;
  std::size_t b = 0;
  int axis = 0;
  double conductance = 0.0;
};

// Finite-volume discretisation of L = Laplacian - x . grad with zero-flux
// (Neumann) conditions on a cell-centred tensor mesh of the truncation box.
// In 2D, cells whose centre lies outside the domain are masked out and the
// remaining staircase boundary is treated as reflecting along the grid axes.
//
// Flux form: (A u)_a = sum_b c_ab (u_b - u_a) / W_a, with W_a the Gaussian
// weight of cell a and c_ab the Gaussian density at the shared face times
// cell volume over spacing^2. This is second-order consistent with L, has
// vanishing row sums, and W A is exactly symmetric.
class GridOperator {
 public:
  int dim() const { return dim_; }
  std::size_t size() const { return static_cast<std::size_t>(nodes_.cols()); }
  const Eigen::MatrixXd& nodes() const { return nodes_; }
  Eigen::VectorXd node(std::size_t i) const { return nodes_.col(static_cast<Eigen::Index>(i)); }
  const Eigen::SparseMatrix<double, Eigen::RowMajor>& matrix() const { return matrix_; }
  // Density times cell volume, rescaled so the total equals the Gaussian mass
  // of the union of active cells.
  const Eigen::VectorXd& weights() const { return weights_; }
  const std::vector<GridFace>& faces() const { return faces_; }
  const Box& box() const { return box_; }
  double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
  int cells(int axis) const { return cells_[static_cast<std::size_t>(axis)]; }
  double truncation_radius() const { return box_.radius; }
  double tail_mass() const { return tail_mass_; }

  // Active neighbour along axis in direction +1/-1, or -1 when absent.
  long neighbour(std::size_t i, int axis, int direction) const;
  // Every axis neighbour on both sides is active.
  bool interior(std::size_t i) const;

  GridFunction sample(const std::function<double(const Eigen::VectorXd&)>& f) const;
  GridFunction sample(const CylFunction& f) const;
  // Multilinear interpolation between active node centres, constant beyond them.
  double interpolate(const GridFunction& u, const Eigen::VectorXd& x) const;

  double mass() const { return weights_.sum(); }
  // Weighted inner product sum_a W_a u_a v_a.
  double inner(const GridFunction& u, const GridFunction& v) const;
  double mean(const GridFunction& u) const { return inner(u, GridFunction::Ones(u.size())) / mass(); }
  // Discrete Dirichlet form sum over faces of c_ab (u_a - u_b)^2, i.e. -u.W A u.
  double energy(const GridFunction& u) const;

 private:
  friend GridOperator grid_build(const ConvexDomain&, const std::vector<int>&, double);

  int dim_ = 1;
  Box box_;
  double tail_mass_ = 0.0;
  std::vector<int> cells_;
  std::vector<double> spacing_;
  std::vector<long> active_;  // tensor index -> active index or -1
  std::vector<std::size_t> tensor_index_;
  Eigen::MatrixXd nodes_;
  Eigen::VectorXd weights_;
  std::vector<GridFace> faces_;
  Eigen::SparseMatrix<double, Eigen::RowMajor> matrix_;
};

// resolution: cells per axis (one entry per axis, or a single entry for all).
// Throws UnsupportedDimension beyond 2D and ResolutionTooCoarse when an axis
// has fewer than 8 active node positions.
GridOperator grid_build(const ConvexDomain& domain, const std::vector<int>& resolution,
                        double tail_mass = 1e-12);
inline GridOperator grid_build(const ConvexDomain& domain, int resolution,
                               double tail_mass = 1e-12) {
  return grid_build(domain, std::vector<int>{resolution}, tail_mass);
}

enum class Scheme { CrankNicolson, Expm };

std::string to_string(Scheme s);

// Approximates T(t)f on the mesh.
//  CrankNicolson: max(200, ceil(200 t)) equal steps, sparse LU.
//  Expm: the action of exp(tA) by uniformisation, sum_k Poisson(k; qt) P^k f
//  with P = I + A/q. Every term is a stochastic matrix power, so positivity,
//  the maximum principle and the W-weighted mean hold to rounding.
GridFunction grid_apply(const GridOperator& op, const GridFunction& f, double t,
                        Scheme scheme = Scheme::CrankNicolson);

struct SpectrumResult {
  // Leading eigenvalues of A, descending; eigenvectors normalised in L2(W).
  std::vector<double> eigenvalues;
  std::vector<GridFunction> eigenvectors;
  // Index groups of eigenvalues within 1e-10 of each other.
  std::vector<std::vector<std::size_t>> multiplets;
  // Minus the first eigenvalue below -1e-8.
  double gap = 0.0;
};

// Top-k eigenpairs of the symmetrised S = W^{1/2} A W^{-1/2}. Dense for small
// meshes, shift-inverted subspace iteration otherwise.
SpectrumResult grid_spectrum(const GridOperator& op, int k);
SpectrumResult grid_spectrum_dense(const GridOperator& op, int k);
SpectrumResult grid_spectrum_iterative(const GridOperator& op, int k);

// Symmetrised operator S with S_ab = c_ab / sqrt(W_a W_b).
Eigen::SparseMatrix<double> symmetrized_matrix(const GridOperator& op);

// CSV with node coordinates x1[,x2] and one column per named grid function.
void write_grid_functions_csv(std::ostream& os, const GridOperator& op,
                              const std::vector<std::pair<std::string, GridFunction>>& columns);
// Coordinate format "row col value" (zero-based), one nonzero per line.
void write_matrix_coo(std::ostream& os, const GridOperator& op);

}  // namespace oulab
