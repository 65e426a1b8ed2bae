// SPDX-License-Identifier: Apache-2.0
//
// nfce: near-field line-of-sight channel synthesis and wavefront estimation
// Copyright (C) 2026 The nfce authors
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

#ifndef NFCE_PARALLEL_HPP
#define NFCE_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nfce
{
    // Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware concurrency).
    // Tasks are claimed dynamically; callers write results into per-index slots so the
    // outcome does not depend on scheduling. The first exception thrown is rethrown.
    template <typename Fn>
    void parallel_for(std::size_t count, int threads, Fn &&fn)
    {
        std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                          : std::max<std::size_t>(1, std::thread::hardware_concurrency());
        workers = std::min(workers, count);
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < count; ++i)
                fn(i);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto body = [&]()
        {
            for (std::size_t i = next++; i < count; i = next++)
            {
                try
                {
                    fn(i);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        };

        std::vector<std::thread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w)
            pool.emplace_back(body);
        body();
        for (auto &t : pool)
            t.join();
        if (error)
            std::rethrow_exception(error);
    }

} // namespace nfce

#endif
