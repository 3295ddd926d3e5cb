#pragma once

#include <cstddef>
#include <functional>

namespace roa {

// Worker count used by data-parallel loops. Results must not depend on it:
// every parallel_for caller writes to disjoint output slots.
unsigned num_threads();
void set_num_threads(unsigned n);

// Runs fn(begin, end) over a static partition of [0, n). Exceptions thrown by
// workers are rethrown (first one wins) after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace roa
