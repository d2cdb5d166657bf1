// SPDX-License-Identifier: Apache-2.0
//
// mimo-outage: outage probability of Kronecker-correlated Rayleigh MIMO channels
// Copyright (C) 2026 The mimo-outage authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mimo/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mimo
{
    namespace
    {
        std::atomic<int> worker_override{0};
    }

    void set_worker_override(int n) { worker_override.store(n < 0 ? 0 : n); }

    int worker_count()
    {
        if (const int o = worker_override.load(); o > 0)
            return o;
        if (const char *env = std::getenv("MIMO_OUTAGE_THREADS"))
        {
            char *end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end != env && v >= 1)
                return static_cast<int>(std::min<long>(v, 1024));
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }

    void parallel_chunks(std::size_t n, std::size_t chunk_size,
                         const std::function<void(std::size_t, std::size_t, std::size_t)> &body)
    {
        if (n == 0)
            return;
        chunk_size = std::max<std::size_t>(chunk_size, 1);
        const std::size_t chunks = (n + chunk_size - 1) / chunk_size;
        const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), chunks);

        if (workers <= 1)
        {
            for (std::size_t c = 0; c < chunks; ++c)
                body(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
            return;
        }

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto run = [&] {
            for (;;)
            {
                const std::size_t c = next.fetch_add(1);
                if (c >= chunks)
                    return;
                try
                {
                    body(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next.store(chunks);
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w)
            pool.emplace_back(run);
        run();
        for (auto &th : pool)
            th.join();
        if (failure)
            std::rethrow_exception(failure);
    }

} // namespace mimo
