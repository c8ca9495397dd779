#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oulab/error.hpp"
#include "oulab/grid.hpp"
#include "oulab/rng.hpp"

namespace oulab {

namespace {

constexpr double kMultipletTol = 1e-10;
constexpr double kKernelTol = 1e-8;
constexpr std::size_t kDenseLimit = 400;
constexpr double kShift = 0.5;
constexpr int kMaxSweeps = 5000;

void check_count(const GridOperator& op, int k) {
  if (k < 1) throw std::invalid_argument("need at least one eigenpair");
  if (op.size() < static_cast<std::size_t>(k) + 2)
    throw std::invalid_argument("mesh has too few nodes for the requested eigenpairs");
}

// Symmetric eigenvectors v -> W^{-1/2} v with a fixed sign convention.
SpectrumResult finish(const GridOperator& op, std::vector<double> values,
                      const std::vector<Eigen::VectorXd>& sym_vectors) {
  SpectrumResult r;
  r.eigenvalues = std::move(values);
  const Eigen::VectorXd inv_sqrt_w = op.weights().cwiseSqrt().cwiseInverse();
  for (const auto& v : sym_vectors) {
    GridFunction u = v.cwiseProduct(inv_sqrt_w);
    u /= std::sqrt(op.inner(u, u));
    Eigen::Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    if (op.mean(u) < -1e-12 || (std::abs(op.mean(u)) <= 1e-12 && u[pivot] < 0)) u = -u;
    r.eigenvectors.push_back(std::move(u));
  }
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    if (i > 0 && r.eigenvalues[i - 1] - r.eigenvalues[i] <= kMultipletTol) {
      r.multiplets.back().push_back(i);
    } else {
      r.multiplets.push_back({i});
    }
  }
  r.gap = std::numeric_limits<double>::quiet_NaN();
  for (double l : r.eigenvalues) {
    if (l < -kKernelTol) {
      r.gap = -l;
      break;
    }
  }
  return r;
}

}  // namespace

SpectrumResult grid_spectrum_dense(const GridOperator& op, int k) {
  check_count(op, k);
  const Eigen::MatrixXd S = Eigen::MatrixXd(symmetrized_matrix(op));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S);
  if (eig.info() != Eigen::Success) throw SolverError("dense symmetric eigensolve failed");
  const Eigen::Index n = S.rows();
  std::vector<double> values;
  std::vector<Eigen::VectorXd> vectors;
  for (int i = 0; i < k; ++i) {
    values.push_back(eig.eigenvalues()[n - 1 - i]);
    vectors.push_back(eig.eigenvectors().col(n - 1 - i));
  }
  return finish(op, std::move(values), vectors);
}

SpectrumResult grid_spectrum_iterative(const GridOperator& op, int k) {
  check_count(op, k);
  const Eigen::SparseMatrix<double> S = symmetrized_matrix(op);
  const Eigen::Index n = S.rows();
  Eigen::SparseMatrix<double> shifted(n, n);
  shifted.setIdentity();
  shifted *= kShift;
  shifted -= S;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(shifted);
  if (ldlt.info() != Eigen::Success) throw SolverError("shift-invert factorisation failed");

  // Block size with headroom so the convergence ratio theta_{p}/theta_{k} is small.
  const Eigen::Index p = std::min<Eigen::Index>(n, 2 * k + 8);
  Eigen::MatrixXd block(n, p);
  NormalStream normal(0x5eedULL);
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index i = 0; i < n; ++i) block(i, j) = normal();
  Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(block).householderQ() *
                      Eigen::MatrixXd::Identity(n, p);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const Eigen::MatrixXd Z = ldlt.solve(Q);
    if (ldlt.info() != Eigen::Success) throw SolverError("shift-invert solve failed");
    Eigen::MatrixXd H = Q.transpose() * Z;
    H = 0.5 * (H + H.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(H);
    // Ritz values ascending; the largest theta map to the eigenvalues nearest zero.
    const Eigen::MatrixXd V = small.eigenvectors().rowwise().reverse();
    const Eigen::VectorXd theta = small.eigenvalues().reverse();
    const Eigen::MatrixXd ritz = Q * V;
    const Eigen::MatrixXd image = Z * V;
    bool converged = true;
    for (int i = 0; i < k; ++i) {
      const double res = (image.col(i) - theta[i] * ritz.col(i)).norm();
      if (res > 1e-11 * theta[0]) {
        converged = false;
        break;
      }
    }
    if (converged) {
      std::vector<double> values;
      std::vector<Eigen::VectorXd> vectors;
      for (int i = 0; i < k; ++i) {
        values.push_back(kShift - 1.0 / theta[i]);
        vectors.push_back(ritz.col(i).normalized());
      }
      return finish(op, std::move(values), vectors);
    }
    Q = Eigen::HouseholderQR<Eigen::MatrixXd>(image).householderQ() *
        Eigen::MatrixXd::Identity(n, p);
  }
  throw NoConvergence("subspace iteration did not converge");
}

SpectrumResult grid_spectrum(const GridOperator& op, int k) {
  return op.size() <= kDenseLimit ? grid_spectrum_dense(op, k) : grid_spectrum_iterative(op, k);
}

}  // namespace oulab
