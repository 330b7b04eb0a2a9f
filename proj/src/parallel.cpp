// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace texweave {

namespace {
std::atomic<int> g_max_threads{0};
}

void set_max_threads(int n) { g_max_threads.store(n < 0 ? 0 : n); }

int max_threads() {
    int n = g_max_threads.load();
    if (n == 0) {
        n = static_cast<int>(std::thread::hardware_concurrency());
        if (n == 0) n = 1;
    }
    return n;
}

void parallel_for_chunks(int64_t begin, int64_t end,
                         const std::function<void(int64_t, int64_t)>& fn) {
    const int64_t count = end - begin;
    if (count <= 0) return;
    int workers = std::min<int64_t>(max_threads(), count);
    if (workers <= 1 || count < 2) {
        fn(begin, end);
        return;
    }
    const int64_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const int64_t lo = begin + w * chunk;
        const int64_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& t : threads) t.join();
}

void parallel_for(int64_t begin, int64_t end, const std::function<void(int64_t)>& fn) {
    parallel_for_chunks(begin, end, [&fn](int64_t lo, int64_t hi) {
        for (int64_t i = lo; i < hi; ++i) fn(i);
    });
}

}  // namespace texweave
