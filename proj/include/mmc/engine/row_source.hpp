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

#ifndef MMC_ENGINE_ROW_SOURCE_HPP
#define MMC_ENGINE_ROW_SOURCE_HPP

#include <memory>
#include <span>
#include <vector>

#include "mmc/core/data_matrix.hpp"
#include "mmc/engine/metrics.hpp"

namespace mmc {

/**
 * Where row data lives. Algorithms never touch the matrix directly; they ask
 * for the rows they need, which lets the external-memory backend skip I/O for
 * pruned rows and account for every byte.
 *
 * request() may be called concurrently by distinct workers. The returned
 * pointers stay valid until that worker's next request.
 */
class row_source {
public:
    virtual ~row_source() = default;

    virtual std::size_t rows() const = 0;
    virtual std::size_t cols() const = 0;
    // Every |value| in column j is < 2^column_exponents()[j].
    virtual const std::vector<int>& column_exponents() const = 0;

    // Called once per run before any request, with the run's layout.
    virtual void bind(const std::vector<partition_range>& parts, unsigned threads) = 0;
    virtual void begin_iteration(unsigned /*iter*/) {}
    virtual void end_iteration(unsigned /*iter*/) {}

    // ids must be ascending.
    virtual std::span<const double* const> request(std::span<const index_t> ids,
                                                   unsigned worker, worker_counters& io) = 0;

    // Single-row convenience for serial code paths.
    const double* request_one(index_t id, unsigned worker, worker_counters& io) {
        return request(std::span<const index_t>(&id, 1), worker, io)[0];
    }
};

// Rows served straight from a resident matrix. Requests are still counted.
class memory_source final : public row_source {
public:
    explicit memory_source(const data_matrix& m);

    std::size_t rows() const override { return m_->rows(); }
    std::size_t cols() const override { return m_->cols(); }
    const std::vector<int>& column_exponents() const override { return exps_; }
    void bind(const std::vector<partition_range>& parts, unsigned threads) override;
    std::span<const double* const> request(std::span<const index_t> ids, unsigned worker,
                                           worker_counters& io) override;

    const data_matrix& matrix() const { return *m_; }

private:
    const data_matrix* m_;
    std::vector<int> exps_;
    std::vector<std::vector<const double*>> scratch_;
};

/// Presents the rows of another source scaled to unit L2 norm, computed with
/// the same arithmetic as normalize_rows. Reports exponent 1 for every column.
class normalized_source final : public row_source {
public:
    explicit normalized_source(row_source& inner);

    std::size_t rows() const override { return inner_->rows(); }
    std::size_t cols() const override { return inner_->cols(); }
    const std::vector<int>& column_exponents() const override { return exps_; }
    void bind(const std::vector<partition_range>& parts, unsigned threads) override;
    void begin_iteration(unsigned iter) override { inner_->begin_iteration(iter); }
    void end_iteration(unsigned iter) override { inner_->end_iteration(iter); }
    std::span<const double* const> request(std::span<const index_t> ids, unsigned worker,
                                           worker_counters& io) override;

private:
    row_source* inner_;
    std::vector<int> exps_;
    struct scratch {
        std::vector<double> values;
        std::vector<const double*> ptrs;
    };
    std::vector<scratch> scratch_;
};

}  // namespace mmc

#endif
