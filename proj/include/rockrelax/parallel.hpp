//------------------------------------------------------------------------------
// rockrelax: Rockafellian relaxation toolkit for stochastic programs
// Copyright 2026 the rockrelax authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//------------------------------------------------------------------------------
#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace rockrelax {

/// Worker count: ROCKRELAX_WORKERS if set (>=1), else hardware concurrency.
inline int worker_count() {
    static const int n = [] {
        if (const char* env = std::getenv("ROCKRELAX_WORKERS")) {
            int v = std::atoi(env);
            if (v >= 1) return v;
        }
        unsigned hw = std::thread::hardware_concurrency();
        return hw >= 1 ? static_cast<int>(hw) : 1;
    }();
    return n;
}

/// Runs body(i) for i in [0, n).  Each index writes only its own output
/// slot, so results are independent of scheduling and worker count.
/// The first exception thrown by any body is rethrown on the caller.
template <typename F>
void parallel_for(std::size_t n, F&& body) {
    const int workers = worker_count();
    if (workers <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::atomic_flag error_claimed = ATOMIC_FLAG_INIT;

    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load(std::memory_order_relaxed)) break;
            try {
                body(i);
            } catch (...) {
                if (!error_claimed.test_and_set()) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                break;
            }
        }
    };

    std::vector<std::thread> pool;
    int spawn = workers - 1;
    if (static_cast<std::size_t>(spawn) > n) spawn = static_cast<int>(n);
    pool.reserve(static_cast<std::size_t>(spawn));
    for (int t = 0; t < spawn; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace rockrelax
