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

#include "mmc/core/data_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmc/core/distance.hpp"
#include "mmc/core/error.hpp"

namespace mmc {

std::vector<partition_range> make_partitions(index_t n, unsigned parts) {
    if (parts == 0) throw usage_error("partition count must be >= 1");
    std::vector<partition_range> out;
    out.reserve(parts);
    const index_t base = n / parts;
    const index_t extra = n % parts;
    index_t start = 0;
    for (unsigned p = 0; p < parts; ++p) {
        const index_t count = base + (p < extra ? 1 : 0);
        out.push_back({start, count, p});
        start += count;
    }
    return out;
}

unsigned partition_of(const std::vector<partition_range>& parts, index_t row) {
    auto it = std::upper_bound(parts.begin(), parts.end(), row,
                               [](index_t r, const partition_range& p) { return r < p.start; });
    // step back over empty trailing ranges that share a start
    while (it != parts.begin()) {
        --it;
        if (row < it->start + it->count) return it->id;
    }
    throw usage_error("row " + std::to_string(row) + " outside the partition map");
}

data_matrix::data_matrix(std::size_t n, std::size_t d, std::vector<double> values,
                         unsigned partitions)
    : n_(n), d_(d), values_(std::move(values)) {
    if (n == 0 || d == 0) throw usage_error("data_matrix: n and d must be >= 1");
    if (values_.size() != n * d) {
        throw format_error("data_matrix: expected " + std::to_string(n * d) +
                           " values, got " + std::to_string(values_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw data_error("data_matrix: non-finite value at row " +
                             std::to_string(i / d) + ", column " + std::to_string(i % d));
        }
    }
    parts_ = make_partitions(n_, partitions);
}

void data_matrix::repartition(unsigned partitions) { parts_ = make_partitions(n_, partitions); }

data_matrix normalize_rows(const data_matrix& m) {
    std::vector<double> out(m.values().begin(), m.values().end());
    const std::size_t d = m.cols();
    for (index_t i = 0; i < m.rows(); ++i) {
        double* r = out.data() + i * d;
        const double norm = std::sqrt(dot(r, r, d));
        if (norm == 0.0) throw domain_error("normalize_rows: row " + std::to_string(i) + " is zero");
        for (std::size_t j = 0; j < d; ++j) r[j] /= norm;
    }
    return data_matrix(m.rows(), d, std::move(out),
                       static_cast<unsigned>(m.partitions().size()));
}

}  // namespace mmc
