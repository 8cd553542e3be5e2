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

#ifndef MMC_ENGINE_TASK_QUEUE_HPP
#define MMC_ENGINE_TASK_QUEUE_HPP

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "mmc/core/data_matrix.hpp"
#include "mmc/engine/config.hpp"

namespace mmc {

/// The rows a phase touches: either every row of the matrix or an ascending
/// list of row ids. Tasks address positions in this set.
class active_rows {
public:
    static active_rows all(index_t n) { return active_rows(n, {}); }
    static active_rows list(std::span<const index_t> ids) { return active_rows(ids.size(), ids); }

    index_t size() const { return size_; }
    bool is_all() const { return all_; }
    index_t row(index_t pos) const { return all_ ? pos : ids_[pos]; }
    std::span<const index_t> ids() const { return ids_; }

private:
    active_rows(index_t size, std::span<const index_t> ids)
        : size_(size), ids_(ids), all_(ids.data() == nullptr && size != 0) {}
    index_t size_ = 0;
    std::span<const index_t> ids_;
    bool all_ = false;
};

struct task {
    index_t begin = 0;            // position in the active set
    index_t count = 0;
    unsigned home_partition = 0;
    std::size_t index = 0;        // dense, in row order; stable across schedulers
};

// Cuts the active set into tasks of at most task_size positions, never
// crossing a partition boundary.
std::vector<task> make_tasks(const std::vector<partition_range>& parts,
                             const active_rows& rows, std::size_t task_size);

/**
 * Partitioned FIFO task queue. Each partition has its own lock. A worker
 * drains its home partition, then scans the other partitions of its locality
 * group, then every remaining partition, taking the first task it finds.
 */
class task_queue {
public:
    task_queue(sched_mode mode, unsigned partitions, unsigned groups, unsigned threads);

    void reset(const std::vector<task>& tasks, std::uint64_t shuffle_seed = 0);
    std::optional<task> next(unsigned worker);

    unsigned home_of(unsigned worker) const { return worker % partitions_; }
    unsigned group_of(unsigned partition) const;
    // Partition visiting order for a worker whose home queue is empty.
    const std::vector<unsigned>& steal_order(unsigned home) const { return steal_order_[home]; }
    std::uint64_t steals() const { return steals_.load(std::memory_order_relaxed); }
    std::size_t pending() const;

private:
    struct lane {
        mutable std::mutex mu;
        std::vector<task> items;
        std::size_t head = 0;
    };
    std::optional<task> pop(unsigned lane_id);

    sched_mode mode_;
    unsigned partitions_;
    unsigned groups_;
    unsigned threads_;
    std::vector<std::unique_ptr<lane>> lanes_;
    std::vector<std::vector<unsigned>> steal_order_;
    std::atomic<std::uint64_t> steals_{0};
};

}  // namespace mmc

#endif
