// Deterministic fork-join helpers.  Work is split into index chunks, chunk
// results are combined strictly in index order, so the output is identical
// for every thread count.

#pragma once

#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace pseudopower {

inline unsigned default_thread_count() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Applies fn(begin, end) to contiguous subranges of [0, n) and returns the
// per-chunk results in ascending index order.
template <typename R, typename Fn>
std::vector<R> chunked_map(std::size_t n, unsigned threads, Fn fn) {
    if (threads == 0) threads = 1;
    std::size_t chunks = std::min<std::size_t>(threads, n ? n : 1);
    std::vector<std::future<R>> futures;
    futures.reserve(chunks);
    std::size_t per = n / chunks, extra = n % chunks, begin = 0;
    for (std::size_t i = 0; i < chunks; ++i) {
        std::size_t len = per + (i < extra ? 1 : 0);
        std::size_t end = begin + len;
        futures.push_back(std::async(chunks == 1 ? std::launch::deferred
                                                 : std::launch::async,
                                     fn, begin, end));
        begin = end;
    }
    std::vector<R> out;
    out.reserve(chunks);
    for (auto& f : futures) out.push_back(f.get());
    return out;
}

}  // namespace pseudopower
