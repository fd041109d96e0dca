#ifndef USTATLAB_PARALLEL_HPP
#define USTATLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace ustatlab {

// Runs fn(0..count-1) on up to `threads` workers. Each index owns its output
// slot, so results are identical for any thread count; aggregation happens
// afterwards in index order.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

// Worker count actually used for a request (0 means hardware concurrency).
int effective_threads(int requested);

} // namespace ustatlab

#endif
