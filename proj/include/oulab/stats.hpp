#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace oulab {

// Neumaier-compensated running sum. The result does not depend on how the
// caller partitioned the work as long as terms arrive in the same order.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// A Monte Carlo estimate: sample mean and its standard error.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

inline double compensated_mean(std::span<const double> values) {
  CompensatedSum s;
  for (double v : values) s.add(v);
  return values.empty() ? 0.0 : s.value() / static_cast<double>(values.size());
}

// Mean with standard error sd/sqrt(n); two-pass variance.
inline Estimate mean_estimate(std::span<const double> values) {
  Estimate e;
  e.count = values.size();
  if (values.empty()) return e;
  e.value = compensated_mean(values);
  if (values.size() < 2) return e;
  CompensatedSum ss;
  for (double v : values) {
    const double d = v - e.value;
    ss.add(d * d);
  }
  const double n = static_cast<double>(values.size());
  e.std_error = std::sqrt(ss.value() / (n - 1.0) / n);
  return e;
}

}  // namespace oulab
