#include "oulab/grid.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "oulab/csv.hpp"
#include "oulab/error.hpp"
#include "oulab/gauss.hpp"
#include "oulab/stats.hpp"

namespace oulab {

namespace {

constexpr int kMinNodesPerAxis = 8;

// Gaussian mass of [a, b], using whichever tail keeps relative accuracy.
double interval_mass(double a, double b) {
  if (a >= 0.0) return gauss::normal_upper_tail(a) - gauss::normal_upper_tail(b);
  if (b <= 0.0) return gauss::normal_upper_tail(-b) - gauss::normal_upper_tail(-a);
  return 1.0 - gauss::normal_upper_tail(-a) - gauss::normal_upper_tail(b);
}

double density(const Eigen::VectorXd& x) { return gauss::normal_density(x); }

}  // namespace

std::string to_string(Scheme s) {
  return s == Scheme::CrankNicolson ? "crank_nicolson" : "expm";
}

GridOperator grid_build(const ConvexDomain& domain, const std::vector<int>& resolution,
                        double tail_mass) {
  const int dim = domain.dim();
  if (dim > 2) throw UnsupportedDimension(dim);
  if (resolution.empty() || (resolution.size() != 1 && static_cast<int>(resolution.size()) != dim))
    throw std::invalid_argument("resolution needs one entry or one per axis");

  GridOperator op;
  op.dim_ = dim;
  op.tail_mass_ = tail_mass;
  op.box_ = truncation_box(domain, tail_mass);
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) {
    const int n = resolution.size() == 1 ? resolution[0] : resolution[static_cast<std::size_t>(a)];
    if (n < kMinNodesPerAxis)
      throw ResolutionTooCoarse("axis " + std::to_string(a) + " has " + std::to_string(n) +
                                " cells, need at least " + std::to_string(kMinNodesPerAxis));
    op.cells_.push_back(n);
    op.spacing_.push_back((op.box_.upper[a] - op.box_.lower[a]) / n);
    total *= static_cast<std::size_t>(n);
  }

  auto centre = [&](std::size_t tensor) {
    Eigen::VectorXd x(dim);
    std::size_t rem = tensor;
    for (int a = 0; a < dim; ++a) {
      const std::size_t i = rem % static_cast<std::size_t>(op.cells_[a]);
      rem /= static_cast<std::size_t>(op.cells_[a]);
      x[a] = op.box_.lower[a] + (static_cast<double>(i) + 0.5) * op.spacing_[a];
    }
    return x;
  };

  op.active_.assign(total, -1);
  std::vector<Eigen::VectorXd> centres;
  for (std::size_t t = 0; t < total; ++t) {
    Eigen::VectorXd x = centre(t);
    if (!domain.contains(x, 0.0)) continue;
    op.active_[t] = static_cast<long>(centres.size());
    op.tensor_index_.push_back(t);
    centres.push_back(std::move(x));
  }
  const std::size_t n = centres.size();
  op.nodes_.resize(dim, static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) op.nodes_.col(static_cast<Eigen::Index>(i)) = centres[i];

  for (int a = 0; a < dim; ++a) {
    std::vector<double> seen;
    for (const auto& x : centres) seen.push_back(x[a]);
    std::sort(seen.begin(), seen.end());
    const auto distinct = std::unique(seen.begin(), seen.end()) - seen.begin();
    if (distinct < kMinNodesPerAxis)
      throw ResolutionTooCoarse("axis " + std::to_string(a) + " has only " +
                                std::to_string(distinct) + " active node positions");
  }

  double volume = 1.0;
  for (double h : op.spacing_) volume *= h;

  Eigen::VectorXd raw_weights(static_cast<Eigen::Index>(n));
  double exact_mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    raw_weights[static_cast<Eigen::Index>(i)] = density(centres[i]) * volume;
    double cell = 1.0;
    for (int a = 0; a < dim; ++a) {
      const double half = 0.5 * op.spacing_[a];
      cell *= interval_mass(centres[i][a] - half, centres[i][a] + half);
    }
    exact_mass += cell;
  }

  std::vector<GridFace> raw_faces;
  std::size_t stride = 1;
  for (int a = 0; a < dim; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t t = op.tensor_index_[i];
      const std::size_t coord = (t / stride) % static_cast<std::size_t>(op.cells_[a]);
      if (coord + 1 >= static_cast<std::size_t>(op.cells_[a])) continue;
      const long j = op.active_[t + stride];
      if (j < 0) continue;
      Eigen::VectorXd mid = centres[i];
      mid[a] += 0.5 * op.spacing_[a];
      const double c = density(mid) * volume / (op.spacing_[a] * op.spacing_[a]);
      raw_faces.push_back({i, static_cast<std::size_t>(j), a, c});
    }
    stride *= static_cast<std::size_t>(op.cells_[a]);
  }

  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<double> diag(n, 0.0);
  for (const auto& f : raw_faces) {
    const double wa = raw_weights[static_cast<Eigen::Index>(f.a)];
    const double wb = raw_weights[static_cast<Eigen::Index>(f.b)];
    triplets.emplace_back(static_cast<int>(f.a), static_cast<int>(f.b), f.conductance / wa);
    triplets.emplace_back(static_cast<int>(f.b), static_cast<int>(f.a), f.conductance / wb);
    diag[f.a] -= f.conductance / wa;
    diag[f.b] -= f.conductance / wb;
  }
  for (std::size_t i = 0; i < n; ++i)
    triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), diag[i]);
  op.matrix_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  op.matrix_.setFromTriplets(triplets.begin(), triplets.end());
  op.matrix_.makeCompressed();

  const double scale = exact_mass / raw_weights.sum();
  op.weights_ = scale * raw_weights;
  op.faces_ = std::move(raw_faces);
  for (auto& f : op.faces_) f.conductance *= scale;
  return op;
}

long GridOperator::neighbour(std::size_t i, int axis, int direction) const {
  std::size_t stride = 1;
  for (int a = 0; a < axis; ++a) stride *= static_cast<std::size_t>(cells_[a]);
  const std::size_t t = tensor_index_[i];
  const long coord = static_cast<long>((t / stride) % static_cast<std::size_t>(cells_[axis]));
  const long next = coord + direction;
  if (next < 0 || next >= cells_[axis]) return -1;
  return active_[direction > 0 ? t + stride : t - stride];
}

bool GridOperator::interior(std::size_t i) const {
  for (int a = 0; a < dim_; ++a)
    if (neighbour(i, a, 1) < 0 || neighbour(i, a, -1) < 0) return false;
  return true;
}

GridFunction GridOperator::sample(const std::function<double(const Eigen::VectorXd&)>& f) const {
  GridFunction u(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) u[static_cast<Eigen::Index>(i)] = f(node(i));
  return u;
}

GridFunction GridOperator::sample(const CylFunction& f) const {
  if (f.dim() != dim_) throw DimensionMismatch(dim_, f.dim());
  return sample([&](const Eigen::VectorXd& x) { return f.eval(x); });
}

double GridOperator::interpolate(const GridFunction& u, const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw DimensionMismatch(dim_, static_cast<int>(x.size()));
  // Lower corner cell index and fractional offset per axis.
  std::vector<long> base(static_cast<std::size_t>(dim_));
  std::vector<double> frac(static_cast<std::size_t>(dim_));
  for (int a = 0; a < dim_; ++a) {
    const double s = (x[a] - box_.lower[a]) / spacing_[a] - 0.5;
    const double clamped = std::clamp(s, 0.0, static_cast<double>(cells_[a] - 1));
    long i = static_cast<long>(std::floor(clamped));
    if (i >= cells_[a] - 1) i = cells_[a] - 2;
    base[a] = i;
    frac[a] = clamped - static_cast<double>(i);
  }
  double value = 0.0;
  double total = 0.0;
  const int corners = 1 << dim_;
  for (int c = 0; c < corners; ++c) {
    std::size_t t = 0;
    std::size_t stride = 1;
    double w = 1.0;
    for (int a = 0; a < dim_; ++a) {
      const int bit = (c >> a) & 1;
      t += static_cast<std::size_t>(base[a] + bit) * stride;
      stride *= static_cast<std::size_t>(cells_[a]);
      w *= bit ? frac[a] : 1.0 - frac[a];
    }
    const long j = active_[t];
    if (j < 0 || w == 0.0) continue;
    value += w * u[j];
    total += w;
  }
  if (total > 0.0) return value / total;
  // All surrounding corners masked: nearest active node.
  Eigen::Index best = 0;
  (nodes_.colwise() - x).colwise().squaredNorm().minCoeff(&best);
  return u[best];
}

double GridOperator::inner(const GridFunction& u, const GridFunction& v) const {
  CompensatedSum s;
  for (Eigen::Index i = 0; i < u.size(); ++i) s.add(weights_[i] * u[i] * v[i]);
  return s.value();
}

double GridOperator::energy(const GridFunction& u) const {
  CompensatedSum s;
  for (const auto& f : faces_) {
    const double d = u[static_cast<Eigen::Index>(f.a)] - u[static_cast<Eigen::Index>(f.b)];
    s.add(f.conductance * d * d);
  }
  return s.value();
}

GridFunction grid_apply(const GridOperator& op, const GridFunction& f, double t, Scheme scheme) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be nonnegative");
  if (f.size() != static_cast<Eigen::Index>(op.size()))
    throw DimensionMismatch(static_cast<int>(op.size()), static_cast<int>(f.size()));
  if (t == 0.0) return f;
  const auto& A = op.matrix();

  if (scheme == Scheme::CrankNicolson) {
    const int steps = std::max(200, static_cast<int>(std::ceil(200.0 * t)));
    const double dt = t / steps;
    Eigen::SparseMatrix<double> identity(A.rows(), A.cols());
    identity.setIdentity();
    Eigen::SparseMatrix<double> lhs = identity - (0.5 * dt) * Eigen::SparseMatrix<double>(A);
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(lhs);
    if (lu.info() != Eigen::Success) throw SolverError("Crank-Nicolson factorisation failed");
    GridFunction u = f;
    for (int s = 0; s < steps; ++s) {
      const GridFunction rhs = u + (0.5 * dt) * (A * u);
      u = lu.solve(rhs);
      if (lu.info() != Eigen::Success) throw SolverError("Crank-Nicolson solve failed");
    }
    return u;
  }

  // Uniformisation with the nonnegative stochastic matrix P = I + A/q.
  double q = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) q = std::max(q, -A.coeff(i, i));
  if (q == 0.0) return f;
  Eigen::SparseMatrix<double, Eigen::RowMajor> P = A / q;
  for (Eigen::Index i = 0; i < P.rows(); ++i) P.coeffRef(i, i) = std::max(0.0, 1.0 + A.coeff(i, i) / q);
  const double lambda = q * t;
  GridFunction power = f;
  GridFunction acc = GridFunction::Zero(f.size());
  double weight_sum = 0.0;
  const double log_lambda = std::log(lambda);
  for (long k = 0;; ++k) {
    const double log_w = -lambda + static_cast<double>(k) * log_lambda - std::lgamma(k + 1.0);
    const double w = std::exp(log_w);
    if (w > 0.0) {
      acc += w * power;
      weight_sum += w;
    }
    const double kk = static_cast<double>(k + 1);
    if (kk > lambda && w * kk / (kk - lambda) < 1e-18) break;
    power = P * power;
  }
  return acc / weight_sum;
}

Eigen::SparseMatrix<double> symmetrized_matrix(const GridOperator& op) {
  const auto& A = op.matrix();
  const auto& W = op.weights();
  std::vector<Eigen::Triplet<double>> triplets;
  for (const auto& f : op.faces()) {
    const double s = f.conductance / std::sqrt(W[static_cast<Eigen::Index>(f.a)] *
                                                W[static_cast<Eigen::Index>(f.b)]);
    triplets.emplace_back(static_cast<int>(f.a), static_cast<int>(f.b), s);
    triplets.emplace_back(static_cast<int>(f.b), static_cast<int>(f.a), s);
  }
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), A.coeff(i, i));
  Eigen::SparseMatrix<double> S(A.rows(), A.cols());
  S.setFromTriplets(triplets.begin(), triplets.end());
  return S;
}

void write_grid_functions_csv(std::ostream& os, const GridOperator& op,
                              const std::vector<std::pair<std::string, GridFunction>>& columns) {
  std::vector<std::string> header;
  for (int a = 0; a < op.dim(); ++a) header.push_back("x" + std::to_string(a + 1));
  for (const auto& c : columns) header.push_back(c.first);
  CsvWriter csv(os, header);
  for (std::size_t i = 0; i < op.size(); ++i) {
    std::vector<std::string> row;
    for (int a = 0; a < op.dim(); ++a)
      row.push_back(format_double(op.nodes()(a, static_cast<Eigen::Index>(i))));
    for (const auto& c : columns) row.push_back(format_double(c.second[static_cast<Eigen::Index>(i)]));
    csv.row(row);
  }
}

void write_matrix_coo(std::ostream& os, const GridOperator& op) {
  const auto& A = op.matrix();
  for (Eigen::Index r = 0; r < A.outerSize(); ++r)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(A, r); it; ++it)
      os << it.row() << ' ' << it.col() << ' ' << format_double(it.value()) << '\n';
}

}  // namespace oulab
