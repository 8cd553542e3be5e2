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

#ifndef MMC_EXTMEM_ROW_CACHE_HPP
#define MMC_EXTMEM_ROW_CACHE_HPP

#include <list>
#include <memory>
#include <shared_mutex>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mmc/core/data_matrix.hpp"

namespace mmc {

enum class cache_mode { off, lazy, lru };

std::string_view to_string(cache_mode m);
cache_mode parse_cache_mode(std::string_view s);

// Lazy refreshes happen at t = (2^j - 1) * interval for j >= 1.
bool refresh_due(unsigned iter, unsigned interval);

/**
 * Row cache split by data partition. Partition p belongs to worker p % T,
 * the only worker that inserts into it during a parallel phase.
 *
 * lazy: contents are frozen between refresh iterations, so lookups take no
 *   lock. During a refresh iteration every requested row is staged; at the
 *   end of that iteration each partition is flushed and refilled with its
 *   lowest staged row ids up to its capacity.
 * lru: the owner inserts misses and evicts the least recently used row;
 *   other workers only read under a shared lock and do not reorder.
 */
class row_cache {
public:
    row_cache(cache_mode mode, std::size_t capacity_bytes, std::size_t d, unsigned interval = 5);

    cache_mode mode() const { return mode_; }
    std::size_t capacity_rows() const { return capacity_rows_; }
    unsigned interval() const { return interval_; }

    void bind(const std::vector<partition_range>& parts, unsigned threads);
    void begin_iteration(unsigned iter);
    void end_iteration(unsigned iter);
    bool refreshing() const { return refreshing_; }

    // Copies row `id` into out and returns true on a hit.
    bool lookup(index_t id, unsigned worker, double* out);
    // Offers a row just read from storage.
    void offer(index_t id, const double* row, unsigned worker);

    std::size_t cached_rows() const;
    std::size_t cached_bytes() const { return cached_rows() * d_ * sizeof(double); }
    std::vector<index_t> keys() const;   // ascending
    std::size_t partition_capacity(unsigned p) const { return parts_[p]->capacity; }

private:
    struct partition {
        std::size_t capacity = 0;
        // lazy: sorted ids and a parallel row block
        std::vector<index_t> ids;
        std::vector<double> rows;
        // lru
        mutable std::shared_mutex mu;
        std::list<index_t> order;   // front = most recent
        std::unordered_map<index_t, std::pair<std::list<index_t>::iterator, std::size_t>> where;
        std::vector<std::size_t> free_slots;
    };
    // Rows one worker saw during a refresh iteration, for one partition.
    struct staged {
        std::vector<index_t> ids;
        std::vector<double> rows;
    };

    unsigned owner_of(unsigned p) const { return p % threads_; }
    void refill(unsigned p);

    cache_mode mode_;
    std::size_t capacity_rows_;
    std::size_t d_;
    unsigned interval_;
    unsigned threads_ = 1;
    bool refreshing_ = false;
    std::vector<partition_range> ranges_;
    std::vector<std::unique_ptr<partition>> parts_;
    std::vector<std::vector<staged>> stage_;   // [worker][partition]
    void stage_row(index_t id, const double* row, unsigned worker, unsigned p);
};

}  // namespace mmc

#endif
