#include "oulab/parallel.hpp"

#include <atomic>

namespace oulab {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_thread_count(unsigned n) { g_threads = std::max(1u, n); }
unsigned thread_count() { return g_threads; }

}  // namespace oulab
