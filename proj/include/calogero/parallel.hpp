#pragma once

// Index-ordered parallel map over [0, n).

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace calogero::parallel {

/// Worker count: CALOGERO_SS_THREADS when set to a positive integer, else hardware concurrency.
inline unsigned thread_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CALOGERO_SS_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return hw;
}

/// out[i] = fn(i). The first exception thrown by any task is rethrown.
template <class T, class Fn>
std::vector<T> map_indexed(std::size_t n, Fn&& fn, unsigned threads = thread_count()) {
    std::vector<std::optional<T>> slots(n);
    threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(n, 1)));
    auto collect = [&] {
        std::vector<T> out;
        out.reserve(n);
        for (std::optional<T>& s : slots) out.push_back(std::move(*s));
        return out;
    };
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) slots[i].emplace(fn(i));
        return collect();
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return collect();
}

} // namespace calogero::parallel
