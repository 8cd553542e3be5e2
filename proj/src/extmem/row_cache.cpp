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

#include "mmc/extmem/row_cache.hpp"

#include <algorithm>
#include <cstring>
#include <mutex>
#include <numeric>

#include "mmc/core/error.hpp"

namespace mmc {

std::string_view to_string(cache_mode m) {
    switch (m) {
        case cache_mode::off: return "off";
        case cache_mode::lazy: return "lazy";
        case cache_mode::lru: return "lru";
    }
    return "?";
}

cache_mode parse_cache_mode(std::string_view s) {
    if (s == "off" || s == "none") return cache_mode::off;
    if (s == "lazy") return cache_mode::lazy;
    if (s == "lru") return cache_mode::lru;
    throw usage_error("unknown cache mode '" + std::string(s) + "' (expected off, lazy or lru)");
}

bool refresh_due(unsigned iter, unsigned interval) {
    if (interval == 0 || iter == 0 || iter % interval != 0) return false;
    const unsigned q = iter / interval + 1;
    return (q & (q - 1)) == 0;
}

row_cache::row_cache(cache_mode mode, std::size_t capacity_bytes, std::size_t d, unsigned interval)
    : mode_(mode), capacity_rows_(mode == cache_mode::off ? 0 : capacity_bytes / (d * sizeof(double))),
      d_(d), interval_(interval) {
    if (d == 0) throw usage_error("row_cache: d must be at least 1");
    if (mode == cache_mode::lazy && interval == 0) throw usage_error("cache interval must be at least 1");
}

void row_cache::bind(const std::vector<partition_range>& parts, unsigned threads) {
    ranges_ = parts;
    threads_ = std::max(1u, threads);
    parts_.clear();
    index_t n = 0;
    for (const auto& r : parts) n += r.count;
    // capacity shared in proportion to partition size; leftovers to the
    // lowest partitions
    std::size_t given = 0;
    for (const auto& r : parts) {
        auto p = std::make_unique<partition>();
        p->capacity = n == 0 ? 0 : static_cast<std::size_t>(
            static_cast<long double>(capacity_rows_) * r.count / n);
        p->capacity = std::min<std::size_t>(p->capacity, r.count);
        given += p->capacity;
        parts_.push_back(std::move(p));
    }
    for (std::size_t p = 0; given < capacity_rows_ && p < parts_.size(); ++p) {
        if (parts_[p]->capacity < ranges_[p].count) {
            ++parts_[p]->capacity;
            ++given;
        }
    }
    if (mode_ == cache_mode::lru) {
        for (auto& p : parts_) {
            p->rows.assign(p->capacity * d_, 0.0);
            p->free_slots.resize(p->capacity);
            std::iota(p->free_slots.rbegin(), p->free_slots.rend(), std::size_t{0});
        }
    }
    stage_.assign(threads_ + 1, std::vector<staged>(parts_.size()));
    refreshing_ = false;
}

void row_cache::begin_iteration(unsigned iter) {
    refreshing_ = mode_ == cache_mode::lazy && refresh_due(iter, interval_);
}

void row_cache::stage_row(index_t id, const double* row, unsigned worker, unsigned p) {
    auto& s = stage_[worker][p];
    s.ids.push_back(id);
    s.rows.insert(s.rows.end(), row, row + d_);
}

void row_cache::refill(unsigned p) {
    auto& part = *parts_[p];
    // (id, worker, position) of every staged row, lowest ids first
    std::vector<std::tuple<index_t, unsigned, std::size_t>> all;
    for (unsigned w = 0; w < stage_.size(); ++w) {
        const auto& s = stage_[w][p];
        for (std::size_t i = 0; i < s.ids.size(); ++i) all.emplace_back(s.ids[i], w, i);
    }
    std::sort(all.begin(), all.end());
    part.ids.clear();
    part.rows.clear();
    for (const auto& [id, w, pos] : all) {
        if (part.ids.size() == part.capacity) break;
        if (!part.ids.empty() && part.ids.back() == id) continue;
        part.ids.push_back(id);
        const double* src = stage_[w][p].rows.data() + pos * d_;
        part.rows.insert(part.rows.end(), src, src + d_);
    }
    for (auto& per_worker : stage_) {
        per_worker[p].ids.clear();
        per_worker[p].ids.shrink_to_fit();
        per_worker[p].rows.clear();
        per_worker[p].rows.shrink_to_fit();
    }
}

void row_cache::end_iteration(unsigned) {
    if (!refreshing_) return;
    for (unsigned p = 0; p < parts_.size(); ++p) refill(p);
    refreshing_ = false;
}

bool row_cache::lookup(index_t id, unsigned worker, double* out) {
    if (mode_ == cache_mode::off || parts_.empty()) return false;
    const unsigned p = partition_of(ranges_, id);
    auto& part = *parts_[p];
    if (mode_ == cache_mode::lazy) {
        bool hit = false;
        const auto it = std::lower_bound(part.ids.begin(), part.ids.end(), id);
        if (it != part.ids.end() && *it == id) {
            const auto slot = static_cast<std::size_t>(it - part.ids.begin());
            std::memcpy(out, part.rows.data() + slot * d_, d_ * sizeof(double));
            hit = true;
        }
        if (hit && refreshing_) stage_row(id, out, worker, p);
        return hit;
    }
    if (worker == owner_of(p)) {
        std::unique_lock lock(part.mu);
        const auto it = part.where.find(id);
        if (it == part.where.end()) return false;
        part.order.splice(part.order.begin(), part.order, it->second.first);
        std::memcpy(out, part.rows.data() + it->second.second * d_, d_ * sizeof(double));
        return true;
    }
    std::shared_lock lock(part.mu);
    const auto it = part.where.find(id);
    if (it == part.where.end()) return false;
    std::memcpy(out, part.rows.data() + it->second.second * d_, d_ * sizeof(double));
    return true;
}

void row_cache::offer(index_t id, const double* row, unsigned worker) {
    if (mode_ == cache_mode::off || parts_.empty()) return;
    const unsigned p = partition_of(ranges_, id);
    auto& part = *parts_[p];
    if (mode_ == cache_mode::lazy) {
        if (refreshing_) stage_row(id, row, worker, p);
        return;
    }
    if (worker != owner_of(p) || part.capacity == 0) return;
    std::unique_lock lock(part.mu);
    if (part.where.count(id) != 0) return;
    std::size_t slot = 0;
    if (part.free_slots.empty()) {
        const index_t victim = part.order.back();
        part.order.pop_back();
        slot = part.where[victim].second;
        part.where.erase(victim);
    } else {
        slot = part.free_slots.back();
        part.free_slots.pop_back();
    }
    std::memcpy(part.rows.data() + slot * d_, row, d_ * sizeof(double));
    part.order.push_front(id);
    part.where.emplace(id, std::make_pair(part.order.begin(), slot));
}

std::size_t row_cache::cached_rows() const {
    std::size_t total = 0;
    for (const auto& p : parts_) {
        if (mode_ == cache_mode::lru) {
            std::shared_lock lock(p->mu);
            total += p->where.size();
        } else {
            total += p->ids.size();
        }
    }
    return total;
}

std::vector<index_t> row_cache::keys() const {
    std::vector<index_t> out;
    for (const auto& p : parts_) {
        if (mode_ == cache_mode::lru) {
            std::shared_lock lock(p->mu);
            for (const auto& kv : p->where) out.push_back(kv.first);
        } else {
            out.insert(out.end(), p->ids.begin(), p->ids.end());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace mmc
