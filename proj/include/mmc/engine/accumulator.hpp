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

#ifndef MMC_ENGINE_ACCUMULATOR_HPP
#define MMC_ENGINE_ACCUMULATOR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "mmc/core/types.hpp"
#include "mmc/engine/fixed_point.hpp"

namespace mmc {

// Per-worker k x d running sums plus member counts. Only its owning worker
// touches it during a parallel phase.
class centroid_accumulator {
public:
    centroid_accumulator() = default;
    centroid_accumulator(std::size_t k, std::size_t d) { resize(k, d); }

    void resize(std::size_t k, std::size_t d);
    void clear();

    void add(cluster_t c, const double* row, const fixed_point_codec& codec) {
        std::int64_t* s = sums_.data() + c * d_;
        for (std::size_t j = 0; j < d_; ++j) s[j] += codec.encode(row[j], j);
        ++counts_[c];
    }
    void remove(cluster_t c, const double* row, const fixed_point_codec& codec) {
        std::int64_t* s = sums_.data() + c * d_;
        for (std::size_t j = 0; j < d_; ++j) s[j] -= codec.encode(row[j], j);
        --counts_[c];
    }
    // Adds weight * row; the weight is applied before quantisation.
    void add_weighted(cluster_t c, const double* row, double weight,
                      const fixed_point_codec& codec) {
        std::int64_t* s = sums_.data() + c * d_;
        for (std::size_t j = 0; j < d_; ++j) s[j] += codec.encode(weight * row[j], j);
    }

    std::size_t k() const { return k_; }
    std::size_t d() const { return d_; }
    std::span<const std::int64_t> sums() const { return sums_; }
    std::span<const std::int32_t> counts() const { return counts_; }
    std::size_t bytes() const {
        return sums_.size() * sizeof(std::int64_t) + counts_.size() * sizeof(std::int32_t);
    }

private:
    std::size_t k_ = 0, d_ = 0;
    std::vector<std::int64_t> sums_;
    std::vector<std::int32_t> counts_;
};

// Global totals that per-worker deltas are merged into at the barrier.
class centroid_sums {
public:
    centroid_sums() = default;
    centroid_sums(std::size_t k, std::size_t d) : k_(k), d_(d), sums_(k * d, 0), counts_(k, 0) {}

    void clear();
    void merge(const centroid_accumulator& acc);
    void add(cluster_t c, const double* row, const fixed_point_codec& codec, int sign = 1);

    std::int64_t count(cluster_t c) const { return counts_[c]; }
    std::span<const std::int64_t> sums() const { return sums_; }
    // Mean of cluster c; undefined for an empty cluster.
    void mean(cluster_t c, const fixed_point_codec& codec, double* out) const;
    // Writes current[c] and counts[c] for every non-empty cluster.
    void write_means(const fixed_point_codec& codec, centroid_set& cs) const;

private:
    std::size_t k_ = 0, d_ = 0;
    std::vector<std::int64_t> sums_;
    std::vector<std::int64_t> counts_;
};

/// The reduction at the end of a merged MM step: snapshots current into
/// previous, merges every worker's deltas into `totals` in ascending worker
/// order, rewrites the means of non-empty clusters and refreshes drift.
/// Empty clusters keep their previous centroid; their ids are returned.
std::vector<cluster_t> reduce_accumulators(std::span<const centroid_accumulator> states,
                                           centroid_sums& totals,
                                           const fixed_point_codec& codec,
                                           centroid_set& cs);

}  // namespace mmc

#endif
