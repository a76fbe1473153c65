#ifndef HEDONET_PARALLEL_HPP
#define HEDONET_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace hedonet {

// Worker count: HEDONET_THREADS if set (clamped to >= 1), else hardware concurrency.
std::size_t thread_budget();

// Runs fn(i) for i in [0, n) on up to thread_budget() threads, static block
// partition. Callers obtain determinism by writing results into per-index slots
// and reducing sequentially afterwards; fn must not touch shared mutable state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hedonet

#endif  // HEDONET_PARALLEL_HPP
