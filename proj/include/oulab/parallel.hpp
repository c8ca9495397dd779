#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace oulab {

// Process-wide worker count used by the Monte Carlo and sampling loops.
// Results never depend on this value: work items own their random streams
// and reductions run in item order.
void set_thread_count(unsigned n);
unsigned thread_count();

// Calls body(begin, end) over contiguous chunks of [0, n).
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const unsigned jobs = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
  if (jobs <= 1) {
    if (n > 0) body(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  const std::size_t chunk = (n + jobs - 1) / jobs;
  for (unsigned j = 0; j < jobs; ++j) {
    const std::size_t begin = j * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&, j, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace oulab
