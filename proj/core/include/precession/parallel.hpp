#pragma once

#include <cstddef>
#include <functional>

namespace precession {

// Worker count: PRECESSION_THREADS if set and positive, else hardware concurrency.
int thread_cap();

// Runs body(i) for i in [0, n). Each index runs exactly once; callers write to
// index-owned slots so results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace precession
