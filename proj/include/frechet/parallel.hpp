#ifndef FRECHET_PARALLEL_HPP
#define FRECHET_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace frechet {

namespace detail {
inline thread_local bool inside_parallel_region = false;
}

inline std::size_t default_thread_count() {
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Splits [0, count) into contiguous blocks and runs body(begin, end) on each,
/// one thread per block. Block boundaries depend only on count and threads;
/// callers that write into disjoint, index-addressed slots get results that do
/// not depend on scheduling. The first exception thrown by any block is rethrown.
/// Calls made from inside a block run serially on the calling thread.
template <class Body>
void parallel_for(std::size_t count, Body&& body, std::size_t threads = default_thread_count()) {
    threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, count));
    if (threads == 1 || detail::inside_parallel_region) {
        body(std::size_t{0}, count);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            const std::size_t begin = count * t / threads;
            const std::size_t end = count * (t + 1) / threads;
            workers.emplace_back([&, begin, end, t] {
                detail::inside_parallel_region = true;
                try {
                    body(begin, end);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}

#endif
