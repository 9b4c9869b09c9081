#ifndef BIPHOTON_PARALLEL_HPP
#define BIPHOTON_PARALLEL_HPP

#include <functional>

namespace biphoton {

// Worker cap from BIPHOTON_THREADS (0 or unset = hardware concurrency).
int worker_count();

// Runs body(i) for i in [0, n). Iterations must write disjoint state; the
// split is static so results do not depend on scheduling.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace biphoton

#endif
