#include "oulab/estimators.hpp"

#include <vector>

#include "oulab/error.hpp"
#include "oulab/parallel.hpp"
#include "oulab/sampling.hpp"

namespace oulab {

namespace {

template <class F>
Estimate restricted_mean(const ConvexDomain& domain, std::size_t count, std::uint64_t seed,
                         F&& integrand) {
  const auto sample = gauss::restricted_sample(domain, count, seed);
  std::vector<double> v(count);
  parallel_for(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      v[i] = integrand(Eigen::VectorXd(sample.points.col(static_cast<Eigen::Index>(i))));
  });
  return mean_estimate(v);
}

}  // namespace

Estimate dirichlet_energy(const CylFunction& f, const ConvexDomain& domain, std::size_t count,
                          std::uint64_t seed) {
  if (f.dim() != domain.dim()) throw DimensionMismatch(domain.dim(), f.dim());
  return restricted_mean(domain, count, seed,
                         [&](const Eigen::VectorXd& x) { return f.gradient(x).squaredNorm(); });
}

Estimate mean_value(const CylFunction& f, const ConvexDomain& domain, std::size_t count,
                    std::uint64_t seed) {
  if (f.dim() != domain.dim()) throw DimensionMismatch(domain.dim(), f.dim());
  return restricted_mean(domain, count, seed, [&](const Eigen::VectorXd& x) { return f.eval(x); });
}

}  // namespace oulab
