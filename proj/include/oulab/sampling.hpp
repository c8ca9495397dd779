#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "oulab/domain.hpp"
#include "oulab/stats.hpp"

namespace oulab::gauss {

struct RestrictedSampleOptions {
  // Acceptance rate below which rejection sampling is refused.
  double mass_floor = 1e-3;
  // Proposals drawn before the acceptance rate is first judged.
  std::size_t probe = 16'384;
};

struct RestrictedSample {
  Eigen::MatrixXd points;  // dim x count
  double acceptance_rate = 1.0;
  std::size_t proposals = 0;
};

// i.i.d. draws from the standard Gaussian conditioned on the domain, by
// rejection. Throws MassTooSmall when the probe acceptance rate is below the floor.
RestrictedSample restricted_sample(const ConvexDomain& domain, std::size_t count,
                                   std::uint64_t seed, const RestrictedSampleOptions& options = {});

// Monte Carlo estimate of the Gaussian mass of the domain (exactly 1 for the
// whole space).
Estimate gaussian_mass(const ConvexDomain& domain, std::size_t count, std::uint64_t seed);

}  // namespace oulab::gauss
