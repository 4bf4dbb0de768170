#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fermirmt {

// Worker cap: FERMI_RMT_THREADS if set, hardware concurrency otherwise.
int worker_count();

// Evaluates fn(i) for i in [0, count) using up to worker_count() threads and
// returns the results indexed by i. Determinism: the output depends only on
// fn and count, so reductions over it are reproducible for any worker count.
std::vector<double> parallel_map(std::size_t count, const std::function<double(std::size_t)>& fn);

// Generic per-index task runner (no return values); same partitioning rules.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace fermirmt
