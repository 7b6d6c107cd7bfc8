#pragma once

#include <cstddef>
#include <functional>

namespace dnls {

// Worker count for parallel maps; 0 selects the hardware concurrency.
void set_threads(unsigned n);
unsigned threads();

// Calls f(i) for i in [0, n). Each index is written by exactly one worker, so
// results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

} // namespace dnls
