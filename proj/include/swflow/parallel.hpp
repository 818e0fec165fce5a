#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace swflow {

// Worker threads used by parallel_for. Resolution order: explicit set_threads()
// call, SWFLOW_THREADS environment variable, hardware concurrency.
int thread_count();
void set_threads(int n);

// Runs fn(begin, end) on disjoint contiguous chunks of [0, n). Chunking depends
// only on n and the thread count of the pool actually used, never on timing,
// and all writes go to disjoint index ranges, so results are reproducible.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

// Fixed-shape pairwise tree sum. The summation order depends only on the length
// of the buffer, so traces stay bit-identical across thread counts.
double pairwise_sum(const double* v, std::size_t n);
double pairwise_sum(const std::vector<double>& v);

} // namespace swflow
