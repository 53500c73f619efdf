#pragma once

#include <cstdint>
#include <functional>

namespace varlex {

// Worker count cap. Resolution order: explicit set_thread_budget() override,
// then the VARLEX_THREADS environment variable, then hardware concurrency.
// The budget affects speed only; every parallel computation in this library
// partitions work statically over disjoint outputs, so results are identical
// for any budget.
int thread_budget();

// n >= 1 forces a budget; n == 0 restores the environment/default rule.
void set_thread_budget(int n);

// Invokes fn(begin, end) over a static partition of [0, n).
void parallel_chunks(std::int64_t n,
                     const std::function<void(std::int64_t, std::int64_t)>& fn);

// Invokes fn(i) for i in [0, n).
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

}  // namespace varlex
