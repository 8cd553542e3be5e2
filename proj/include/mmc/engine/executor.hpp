/*
 * Copyright 2026 The mmcluster Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MMC_ENGINE_EXECUTOR_HPP
#define MMC_ENGINE_EXECUTOR_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "mmc/engine/config.hpp"
#include "mmc/engine/task_queue.hpp"

namespace mmc {

struct phase_stats {
    std::vector<std::uint64_t> rows_per_worker;
    std::vector<std::uint64_t> tasks_per_worker;
    std::uint64_t steals = 0;
    std::size_t tasks = 0;
};

/**
 * A team of T OpenMP workers fed from the partitioned task queue. Each call
 * to run() is one parallel phase and ends in exactly one barrier.
 */
class parallel_executor {
public:
    using task_fn = std::function<void(const task&, unsigned worker)>;

    parallel_executor(const engine_config& cfg, index_t n);

    unsigned threads() const { return threads_; }
    const std::vector<partition_range>& partitions() const { return parts_; }
    const task_queue& queue() const { return queue_; }

    // Runs fn over every task of `rows`; rethrows the first worker exception.
    void run(const active_rows& rows, const task_fn& fn);

    std::size_t task_count(const active_rows& rows) const;
    const phase_stats& last_stats() const { return stats_; }
    std::uint64_t barriers() const { return barriers_; }

private:
    engine_config cfg_;
    unsigned threads_;
    std::vector<partition_range> parts_;
    task_queue queue_;
    phase_stats stats_;
    std::uint64_t barriers_ = 0;
    std::uint64_t phase_counter_ = 0;
};

}  // namespace mmc

#endif
