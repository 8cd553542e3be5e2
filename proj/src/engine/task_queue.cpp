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

#include "mmc/engine/task_queue.hpp"

#include <algorithm>
#include <random>

#include "mmc/core/error.hpp"
#include "mmc/core/mixture.hpp"

namespace mmc {

std::vector<task> make_tasks(const std::vector<partition_range>& parts, const active_rows& rows,
                             std::size_t task_size) {
    if (task_size == 0) throw usage_error("task size must be >= 1");
    std::vector<task> out;
    if (rows.size() == 0) return out;
    if (rows.is_all()) {
        for (const auto& p : parts) {
            for (index_t b = p.start; b < p.start + p.count; b += task_size) {
                const index_t c = std::min<index_t>(task_size, p.start + p.count - b);
                out.push_back({b, c, p.id, out.size()});
            }
        }
        return out;
    }
    auto ids = rows.ids();
    if (std::ranges::adjacent_find(ids, std::greater_equal<>{}) != ids.end()) {
        throw usage_error("active row ids must be ascending and < n");
    }
    index_t pos = 0;
    for (const auto& p : parts) {
        const index_t end_row = p.start + p.count;
        while (pos < ids.size() && ids[pos] < end_row) {
            // positions [pos, stop) belong to this partition
            index_t stop = pos;
            while (stop < ids.size() && ids[stop] < end_row && stop - pos < task_size) ++stop;
            out.push_back({pos, stop - pos, p.id, out.size()});
            pos = stop;
        }
    }
    if (pos != ids.size()) throw usage_error("active row ids must be ascending and < n");
    return out;
}

task_queue::task_queue(sched_mode mode, unsigned partitions, unsigned groups, unsigned threads)
    : mode_(mode), partitions_(partitions), groups_(groups), threads_(threads) {
    if (partitions == 0 || threads == 0) throw usage_error("task_queue: empty partition/thread set");
    if (groups == 0 || groups > partitions) groups_ = std::min(partitions, std::max(1u, groups));
    const unsigned lanes = mode_ == sched_mode::fifo ? 1 : partitions_;
    for (unsigned i = 0; i < lanes; ++i) lanes_.push_back(std::make_unique<lane>());

    steal_order_.resize(partitions_);
    for (unsigned h = 0; h < partitions_; ++h) {
        auto& order = steal_order_[h];
        for (unsigned step = 1; step < partitions_; ++step) {
            const unsigned q = (h + step) % partitions_;
            if (group_of(q) == group_of(h)) order.push_back(q);
        }
        for (unsigned step = 1; step < partitions_; ++step) {
            const unsigned q = (h + step) % partitions_;
            if (group_of(q) != group_of(h)) order.push_back(q);
        }
    }
}

unsigned task_queue::group_of(unsigned partition) const {
    return static_cast<unsigned>(static_cast<std::uint64_t>(partition) * groups_ / partitions_);
}

void task_queue::reset(const std::vector<task>& tasks, std::uint64_t shuffle_seed) {
    for (auto& l : lanes_) {
        std::lock_guard<std::mutex> g(l->mu);
        l->items.clear();
        l->head = 0;
    }
    for (const auto& t : tasks) {
        const unsigned lane_id = mode_ == sched_mode::fifo ? 0 : t.home_partition;
        lanes_[lane_id]->items.push_back(t);
    }
    if (shuffle_seed != 0) {
        for (std::size_t i = 0; i < lanes_.size(); ++i) {
            std::mt19937_64 rng(mix_seed(shuffle_seed, i));
            std::shuffle(lanes_[i]->items.begin(), lanes_[i]->items.end(), rng);
        }
    }
    steals_.store(0, std::memory_order_relaxed);
}

std::optional<task> task_queue::pop(unsigned lane_id) {
    lane& l = *lanes_[lane_id];
    std::lock_guard<std::mutex> g(l.mu);
    if (l.head == l.items.size()) return std::nullopt;
    return l.items[l.head++];
}

std::optional<task> task_queue::next(unsigned worker) {
    switch (mode_) {
        case sched_mode::fifo:
            return pop(0);
        case sched_mode::fixed:
            for (unsigned p = worker % threads_; p < partitions_; p += threads_) {
                if (auto t = pop(p)) return t;
            }
            return std::nullopt;
        case sched_mode::steal: {
            const unsigned home = home_of(worker);
            if (auto t = pop(home)) return t;
            for (unsigned q : steal_order_[home]) {
                if (auto t = pop(q)) {
                    steals_.fetch_add(1, std::memory_order_relaxed);
                    return t;
                }
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::size_t task_queue::pending() const {
    std::size_t total = 0;
    for (const auto& l : lanes_) {
        std::lock_guard<std::mutex> g(l->mu);
        total += l->items.size() - l->head;
    }
    return total;
}

}  // namespace mmc
