#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace wzborel {

/// Runs body(i) for i in [0, count) on up to `threads` workers.
///
/// Each index is handled by exactly one worker and writes only its own slot,
/// so results do not depend on the thread count. The first exception is rethrown.
template <typename Body>
void parallel_for(int count, int threads, Body &&body)
{
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < count; i += threads) {
                    body(i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace wzborel
