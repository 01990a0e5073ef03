#pragma once

#include <cstddef>
#include <functional>

namespace mixlearn {

// Worker cap from MIXLEARN_THREADS (0 or unset = hardware concurrency).
std::size_t worker_count();

// Runs body(i) for i in [0, count) on up to worker_count() threads. Each
// index must write only its own output slot so results do not depend on
// scheduling. The first exception thrown by a body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace mixlearn
