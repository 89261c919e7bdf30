#pragma once

#include <cstddef>
#include <functional>

namespace ramsmooth {

// Worker count: RAMSMOOTH_THREADS when set to a positive integer, else the hardware count.
unsigned worker_count();

// Runs body(i) for i in [0, n) on up to worker_count() threads; rethrows the first exception.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ramsmooth
