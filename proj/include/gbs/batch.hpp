// Copyright 2026 The gbsample Authors
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
// Seeded replica batches. Samples are produced in fixed chunks of
// kChunkSize; chunk r owns a fresh sampler and the stream
// derive_seed(seed, r). The output is therefore the same for any number of
// worker threads.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "gbs/distribution.hpp"
#include "gbs/error.hpp"
#include "gbs/rng.hpp"

namespace gbs {

inline constexpr std::uint64_t kChunkSize = 1024;

/// `make()` builds a sampler; `draw(sampler, rng)` returns one OutcomeKey.
/// Exceptions from any chunk are rethrown (the lowest chunk index wins).
template <typename Make, typename Draw>
std::vector<OutcomeKey> run_replicas(std::uint64_t count, std::uint64_t seed, int workers, Make make, Draw draw) {
    require(workers >= 1, ErrorKind::Validation, "workers must be >= 1");
    const std::uint64_t chunks = (count + kChunkSize - 1) / kChunkSize;
    std::vector<OutcomeKey> out(count);
    std::atomic<std::uint64_t> next{0};
    std::mutex guard;
    std::uint64_t failed_chunk = chunks;
    std::exception_ptr failure;

    const auto work = [&] {
        for (std::uint64_t r = next++; r < chunks; r = next++) {
            try {
                auto sampler = make();
                Rng rng(derive_seed(seed, r));
                const std::uint64_t end = std::min(count, (r + 1) * kChunkSize);
                for (std::uint64_t i = r * kChunkSize; i < end; ++i) {
                    out[i] = draw(sampler, rng);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(guard);
                if (r < failed_chunk) {
                    failed_chunk = r;
                    failure = std::current_exception();
                }
            }
        }
    };
    const auto threads = static_cast<std::uint64_t>(workers) < chunks ? static_cast<std::uint64_t>(workers) : chunks;
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::uint64_t t = 0; t < threads; ++t) {
            pool.emplace_back(work);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

}  // namespace gbs
