#ifndef SOLIDSUM_PARALLEL_HPP
#define SOLIDSUM_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace solidsum {

/// Worker count used by every parallel loop.  Defaults to SOLIDSUM_THREADS
/// when set, otherwise 1.
unsigned thread_count();
void set_thread_count(unsigned n);

/**
 * Runs body(i) for i in [0, n).  Indices are split into contiguous stripes,
 * one per worker.  Callers write into per-index slots and reduce in index
 * order, so results do not depend on the worker count.
 */
template <typename Body>
void parallel_for(std::size_t n, Body&& body)
{
    const std::size_t workers = std::min<std::size_t>(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = n * w / workers;
            const std::size_t end = n * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] {
                try {
                    for (std::size_t i = begin; i < end; ++i)
                        body(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

}  // namespace solidsum

#endif
