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

#include "mmc/extmem/sem_source.hpp"

#include <cstring>

#include "mmc/core/error.hpp"

namespace mmc {

sem_source::sem_source(const row_store& store, row_cache* cache)
    : store_(&store), cache_(cache), exps_(store.scan_exponents()), scratch_(1) {}

void sem_source::bind(const std::vector<partition_range>& parts, unsigned threads) {
    scratch_.resize(std::max<std::size_t>(scratch_.size(), threads + 1));
    if (cache_) cache_->bind(parts, threads);
}

void sem_source::begin_iteration(unsigned iter) {
    if (cache_) cache_->begin_iteration(iter);
}

void sem_source::end_iteration(unsigned iter) {
    if (cache_) cache_->end_iteration(iter);
}

std::span<const double* const> sem_source::request(std::span<const index_t> ids, unsigned worker,
                                                   worker_counters& io) {
    const std::size_t d = cols();
    auto& s = scratch_[worker];
    s.values.resize(ids.size() * d);
    s.ptrs.resize(ids.size());
    s.miss_ids.clear();
    s.miss_pos.clear();
    for (std::size_t r = 0; r < ids.size(); ++r) {
        if (ids[r] >= rows()) throw usage_error("row id " + std::to_string(ids[r]) + " out of range");
        double* dst = s.values.data() + r * d;
        s.ptrs[r] = dst;
        if (cache_ && cache_->lookup(ids[r], worker, dst)) {
            ++io.cache_hits;
        } else {
            ++io.cache_misses;
            s.miss_ids.push_back(ids[r]);
            s.miss_pos.push_back(r);
        }
    }
    io.rows_req += ids.size();
    io.bytes_req += ids.size() * d * sizeof(double);
    if (!s.miss_ids.empty()) {
        s.miss_rows.resize(s.miss_ids.size() * d);
        store_->read_rows(s.miss_ids, s.miss_rows.data(), io);
        for (std::size_t m = 0; m < s.miss_ids.size(); ++m) {
            const double* row = s.miss_rows.data() + m * d;
            std::memcpy(s.values.data() + s.miss_pos[m] * d, row, d * sizeof(double));
            if (cache_) cache_->offer(s.miss_ids[m], row, worker);
        }
    }
    return s.ptrs;
}

mm_result sem_kmeans(const std::string& path, index_t n, std::size_t d, const kmeans_params& p,
                     const engine_config& cfg, const sem_options& opt,
                     const iteration_observer& observer) {
    row_store store(path, n, d, opt.page_bytes);
    std::unique_ptr<row_cache> cache;
    if (opt.cache != cache_mode::off) {
        cache = std::make_unique<row_cache>(opt.cache, opt.cache_bytes, d, opt.icache);
    }
    sem_source src(store, cache.get());
    return kmeans(src, p, cfg, observer);
}

}  // namespace mmc
