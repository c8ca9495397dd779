#pragma once

#include <cstdint>

#include "oulab/domain.hpp"
#include "oulab/stats.hpp"
#include "oulab/testfn.hpp"

namespace oulab {

// Integrals against the Gaussian conditioned on the domain, gamma restricted to the domain and renormalised,
// estimated from restricted samples. Multiply by gaussian_mass for the
// unnormalised integral.

// Mean of |grad f|^2.
Estimate dirichlet_energy(const CylFunction& f, const ConvexDomain& domain, std::size_t count,
                          std::uint64_t seed);

// Mean of f under the conditioned measure.
Estimate mean_value(const CylFunction& f, const ConvexDomain& domain, std::size_t count,
                    std::uint64_t seed);

}  // namespace oulab
