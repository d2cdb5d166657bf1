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

#ifndef MIMO_PARALLEL_HPP
#define MIMO_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace mimo
{
    // Worker count: MIMO_OUTAGE_THREADS if set (>= 1), else the hardware
    // concurrency. set_worker_override() takes precedence when non-zero.
    int worker_count();
    void set_worker_override(int n);

    // Runs body(begin, end) over contiguous chunks of [0, n). Chunk boundaries
    // depend only on n and chunk_size, never on the worker count, so callers
    // that reduce per-chunk results in chunk order get identical bits for
    // any number of workers. Exceptions are rethrown on the calling thread.
    void parallel_chunks(std::size_t n, std::size_t chunk_size,
                         const std::function<void(std::size_t chunk, std::size_t begin, std::size_t end)> &body);

} // namespace mimo

#endif
