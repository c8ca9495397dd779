#include "oulab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "oulab/error.hpp"
#include "oulab/gauss.hpp"
#include "oulab/parallel.hpp"
#include "oulab/rng.hpp"

namespace oulab::gauss {

namespace {

constexpr std::size_t kBlock = 4096;

// Accepted points of proposal block b, in proposal order.
std::vector<double> accepted_in_block(const ConvexDomain& domain, std::uint64_t seed,
                                      std::size_t b) {
  const int dim = domain.dim();
  NormalStream normal(derive_seed(seed, b));
  std::vector<double> out;
  Eigen::VectorXd x(dim);
  for (std::size_t c = 0; c < kBlock; ++c) {
    for (int d = 0; d < dim; ++d) x[d] = normal();
    if (domain.contains(x, 0.0)) out.insert(out.end(), x.data(), x.data() + dim);
  }
  return out;
}

}  // namespace

RestrictedSample restricted_sample(const ConvexDomain& domain, std::size_t count,
                                   std::uint64_t seed, const RestrictedSampleOptions& options) {
  const int dim = domain.dim();
  RestrictedSample result;
  result.points.resize(dim, static_cast<Eigen::Index>(count));
  std::size_t filled = 0;
  std::size_t next_block = 0;
  std::size_t accepted_total = 0;
  bool probed = false;
  while (filled < count) {
    // Size the next round from the running acceptance rate.
    const double rate = result.proposals == 0
                            ? 1.0
                            : std::max(static_cast<double>(accepted_total) /
                                           static_cast<double>(result.proposals),
                                       options.mass_floor);
    const std::size_t want = static_cast<std::size_t>(
        std::ceil(static_cast<double>(count - filled) / rate * 1.05 / kBlock));
    std::size_t round = std::max<std::size_t>(want, 1);
    if (!probed) round = std::max(round, (options.probe + kBlock - 1) / kBlock);
    std::vector<std::vector<double>> blocks(round);
    parallel_for(round, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i)
        blocks[i] = accepted_in_block(domain, seed, next_block + i);
    });
    next_block += round;
    for (const auto& blk : blocks) {
      result.proposals += kBlock;
      const std::size_t n = blk.size() / static_cast<std::size_t>(dim);
      accepted_total += n;
      for (std::size_t j = 0; j < n && filled < count; ++j, ++filled)
        for (int d = 0; d < dim; ++d)
          result.points(d, static_cast<Eigen::Index>(filled)) = blk[j * dim + d];
    }
    if (!probed) {
      probed = true;
      const double probe_rate =
          static_cast<double>(accepted_total) / static_cast<double>(result.proposals);
      if (probe_rate < options.mass_floor) {
        throw MassTooSmall("rejection acceptance rate " + std::to_string(probe_rate) +
                           " below floor " + std::to_string(options.mass_floor));
      }
    }
  }
  result.acceptance_rate =
      static_cast<double>(accepted_total) / static_cast<double>(result.proposals);
  return result;
}

Estimate gaussian_mass(const ConvexDomain& domain, std::size_t count, std::uint64_t seed) {
  if (domain.is_whole_space()) return {1.0, 0.0, count};
  const Eigen::MatrixXd pts = sample_gaussian(domain.dim(), count, seed);
  std::size_t inside = 0;
  for (Eigen::Index c = 0; c < pts.cols(); ++c)
    if (domain.contains(pts.col(c), 0.0)) ++inside;
  const double n = static_cast<double>(count);
  const double p = static_cast<double>(inside) / n;
  return {p, std::sqrt(p * (1.0 - p) / n), count};
}

}  // namespace oulab::gauss
