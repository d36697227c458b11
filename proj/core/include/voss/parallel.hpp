#pragma once

#include <functional>

namespace voss {

// Worker count: VOSS_FORGE_THREADS if set and positive, else hardware concurrency.
int thread_count();

// Runs body(i) for i in [0, n). Each index must only write its own outputs.
// If several bodies throw, the exception of the smallest index is rethrown.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace voss
