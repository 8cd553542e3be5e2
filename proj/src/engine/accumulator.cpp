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

#include "mmc/engine/accumulator.hpp"

#include <algorithm>

namespace mmc {

void centroid_accumulator::resize(std::size_t k, std::size_t d) {
    k_ = k;
    d_ = d;
    sums_.assign(k * d, 0);
    counts_.assign(k, 0);
}

void centroid_accumulator::clear() {
    std::fill(sums_.begin(), sums_.end(), 0);
    std::fill(counts_.begin(), counts_.end(), 0);
}

void centroid_sums::clear() {
    std::fill(sums_.begin(), sums_.end(), 0);
    std::fill(counts_.begin(), counts_.end(), 0);
}

void centroid_sums::merge(const centroid_accumulator& acc) {
    auto s = acc.sums();
    for (std::size_t i = 0; i < sums_.size(); ++i) sums_[i] += s[i];
    auto c = acc.counts();
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += c[i];
}

void centroid_sums::add(cluster_t c, const double* row, const fixed_point_codec& codec, int sign) {
    std::int64_t* s = sums_.data() + c * d_;
    for (std::size_t j = 0; j < d_; ++j) s[j] += sign * codec.encode(row[j], j);
    counts_[c] += sign;
}

void centroid_sums::mean(cluster_t c, const fixed_point_codec& codec, double* out) const {
    const std::int64_t* s = sums_.data() + c * d_;
    const auto n = static_cast<double>(counts_[c]);
    for (std::size_t j = 0; j < d_; ++j) out[j] = codec.decode(s[j], j) / n;
}

void centroid_sums::write_means(const fixed_point_codec& codec, centroid_set& cs) const {
    for (std::size_t c = 0; c < k_; ++c) {
        cs.counts[c] = static_cast<std::uint64_t>(counts_[c]);
        if (counts_[c] > 0) mean(static_cast<cluster_t>(c), codec, cs.current.data() + c * d_);
    }
}

std::vector<cluster_t> reduce_accumulators(std::span<const centroid_accumulator> states,
                                           centroid_sums& totals, const fixed_point_codec& codec,
                                           centroid_set& cs) {
    cs.snapshot();
    for (const auto& s : states) totals.merge(s);
    totals.write_means(codec, cs);
    cs.update_drift();
    std::vector<cluster_t> empty;
    for (std::size_t c = 0; c < cs.k; ++c) {
        if (totals.count(static_cast<cluster_t>(c)) == 0) empty.push_back(static_cast<cluster_t>(c));
    }
    return empty;
}

}  // namespace mmc
