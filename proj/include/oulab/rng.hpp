#pragma once

#include <cstdint>
#include <limits>

#include <boost/random/normal_distribution.hpp>

namespace oulab {

// Counter-based SplitMix64 stream. Cheap to construct, so every Monte Carlo
// path or sample block gets its own stream keyed by (root seed, index).
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Sub-seed for stream `index` under `root`; distinct indices give unrelated streams.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  return Rng::mix(Rng::mix(root ^ 0x6a09e667f3bcc909ULL) + Rng::mix(index + 0x3c6ef372fe94f82bULL));
}

// Standard normal variates drawn from one stream (ziggurat).
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}
  double operator()() { return dist_(rng_); }

 private:
  Rng rng_;
  boost::random::normal_distribution<double> dist_;
};

}  // namespace oulab
