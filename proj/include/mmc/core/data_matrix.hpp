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
#ifndef MMC_CORE_DATA_MATRIX_HPP
#define MMC_CORE_DATA_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "mmc/core/types.hpp"

namespace mmc {

// A contiguous block of rows [start, start + count) owned by one partition.
struct partition_range {
    index_t start = 0;
    index_t count = 0;
    unsigned id = 0;

    bool operator==(const partition_range&) const = default;
};

// Splits [0, n) into `parts` contiguous ranges whose sizes differ by at most
// one. Parts beyond n come out empty.
std::vector<partition_range> make_partitions(index_t n, unsigned parts);

// Partition id owning `row`. Ranges must come from make_partitions.
unsigned partition_of(const std::vector<partition_range>& parts, index_t row);

/**
 * Dense n x d row-major matrix of doubles. Immutable once constructed, so any
 * number of workers may read it concurrently. All values are finite.
 */
class data_matrix {
public:
    data_matrix() = default;
    data_matrix(std::size_t n, std::size_t d, std::vector<double> values,
                unsigned partitions = 1);

    std::size_t rows() const { return n_; }
    std::size_t cols() const { return d_; }
    bool empty() const { return n_ == 0; }

    std::span<const double> row(index_t i) const {
        return {values_.data() + i * d_, d_};
    }
    const double* row_ptr(index_t i) const { return values_.data() + i * d_; }
    std::span<const double> values() const { return values_; }

    const std::vector<partition_range>& partitions() const { return parts_; }
    void repartition(unsigned partitions);

private:
    std::size_t n_ = 0;
    std::size_t d_ = 0;
    std::vector<double> values_;
    std::vector<partition_range> parts_;
};

// Scales every row to unit L2 norm. Throws domain_error on a zero row.
data_matrix normalize_rows(const data_matrix& m);

}  // namespace mmc

#endif
