/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstddef>
#include <functional>

namespace cop {

// Worker count: COP_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_threads();

// Runs fn(i) for i in [0, n). Results must go to caller-owned slots indexed
// by i, which keeps aggregation deterministic regardless of scheduling.
// Nested calls execute sequentially on the calling thread. The first
// exception thrown by any fn is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace cop
