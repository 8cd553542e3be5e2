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

#ifndef MMC_EXTMEM_SEM_SOURCE_HPP
#define MMC_EXTMEM_SEM_SOURCE_HPP

#include <memory>
#include <string>

#include "mmc/algorithms/kmeans.hpp"
#include "mmc/engine/row_source.hpp"
#include "mmc/extmem/row_cache.hpp"
#include "mmc/extmem/row_store.hpp"

namespace mmc {

/// Rows served from a row_store through an optional row_cache. Every
/// requested row counts toward rows_req / bytes_req and is either a cache hit
/// or a miss; misses of one request are read from the store in one call.
class sem_source final : public row_source {
public:
    sem_source(const row_store& store, row_cache* cache = nullptr);

    std::size_t rows() const override { return store_->rows(); }
    std::size_t cols() const override { return store_->cols(); }
    const std::vector<int>& column_exponents() const override { return exps_; }
    void bind(const std::vector<partition_range>& parts, unsigned threads) override;
    void begin_iteration(unsigned iter) override;
    void end_iteration(unsigned iter) override;
    std::span<const double* const> request(std::span<const index_t> ids, unsigned worker,
                                           worker_counters& io) override;

private:
    struct scratch {
        std::vector<double> values;
        std::vector<const double*> ptrs;
        std::vector<index_t> miss_ids;
        std::vector<std::size_t> miss_pos;
        std::vector<double> miss_rows;
    };
    const row_store* store_;
    row_cache* cache_;
    std::vector<int> exps_;
    std::vector<scratch> scratch_;
};

struct sem_options {
    std::size_t page_bytes = 4096;
    cache_mode cache = cache_mode::lazy;
    std::size_t cache_bytes = std::size_t{64} << 20;
    unsigned icache = 5;
};

/// k-means over a matrix file that is never loaded whole.
mm_result sem_kmeans(const std::string& path, index_t n, std::size_t d, const kmeans_params& p,
                     const engine_config& cfg, const sem_options& opt = {},
                     const iteration_observer& observer = {});

}  // namespace mmc

#endif
