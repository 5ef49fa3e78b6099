#pragma once

#include <cstddef>
#include <functional>

namespace localize {

// Worker count: LOCALIZE_THREADS when set (at most 64), else hardware concurrency.
std::size_t thread_count();

// Runs body(i) for every i in [0, n). Callers write results by index, so the
// outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace localize
