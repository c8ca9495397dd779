#pragma once

#include <optional>
#include <string>

namespace oulab {

enum class Method { Mehler, MonteCarlo, Grid };

std::string to_string(Method m);

// A value of T(t)f(x). std_error is present exactly for Monte Carlo estimates.
struct SemigroupEstimate {
  double value = 0.0;
  std::optional<double> std_error;
  Method method = Method::Mehler;
  double t = 0.0;
};

}  // namespace oulab
