// Copyright 2026 The bosim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bosim/parallel.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace bosim {

namespace {

std::atomic<size_t> thread_override{0};

size_t default_threads() {
    size_t n = std::max<size_t>(1, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("BOSIM_THREADS")) {
        try {
            long cap = std::stol(env);
            if (cap >= 1) {
                n = std::min(n, static_cast<size_t>(cap));
            }
        } catch (const std::exception &) {
            // Ignore unparsable values.
        }
    }
    return n;
}

}  // namespace

size_t max_threads() {
    size_t n = thread_override.load();
    return n != 0 ? n : default_threads();
}

void set_max_threads(size_t n) {
    thread_override.store(n);
}

void parallel_for(size_t count, const std::function<void(size_t)> &body) {
    size_t workers = std::min(max_threads(), count);
    if (workers <= 1) {
        for (size_t i = 0; i < count; i++) {
            body(i);
        }
        return;
    }

    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(count);
                return;
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    for (size_t t = 1; t < workers; t++) {
        threads.emplace_back(worker);
    }
    worker();
    for (auto &t : threads) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace bosim
