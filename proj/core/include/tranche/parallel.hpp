#pragma once

#include <cstddef>
#include <functional>

namespace tranche {

// Worker count: TRANCHE_LAB_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

// Runs body(begin, end) over disjoint chunks of [0, n). Chunks may run concurrently.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 256);

}  // namespace tranche
