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

#include "mmc/engine/row_source.hpp"

#include <cmath>

#include "mmc/core/distance.hpp"
#include "mmc/core/error.hpp"
#include "mmc/engine/fixed_point.hpp"

namespace mmc {

memory_source::memory_source(const data_matrix& m)
    : m_(&m), exps_(mmc::column_exponents(m.values(), m.cols())), scratch_(1) {}

void memory_source::bind(const std::vector<partition_range>&, unsigned threads) {
    scratch_.resize(std::max<std::size_t>(scratch_.size(), threads + 1));
}

std::span<const double* const> memory_source::request(std::span<const index_t> ids,
                                                      unsigned worker, worker_counters& io) {
    auto& out = scratch_[worker];
    out.resize(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] >= m_->rows()) throw usage_error("row id out of range");
        out[i] = m_->row_ptr(ids[i]);
    }
    io.rows_req += ids.size();
    io.bytes_req += ids.size() * m_->cols() * sizeof(double);
    return out;
}

normalized_source::normalized_source(row_source& inner)
    : inner_(&inner), exps_(inner.cols(), 1), scratch_(1) {}

void normalized_source::bind(const std::vector<partition_range>& parts, unsigned threads) {
    inner_->bind(parts, threads);
    scratch_.resize(std::max<std::size_t>(scratch_.size(), threads + 1));
}

std::span<const double* const> normalized_source::request(std::span<const index_t> ids,
                                                          unsigned worker, worker_counters& io) {
    auto raw = inner_->request(ids, worker, io);
    const std::size_t d = cols();
    auto& s = scratch_[worker];
    s.values.resize(ids.size() * d);
    s.ptrs.resize(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        double* r = s.values.data() + i * d;
        const double norm = std::sqrt(dot(raw[i], raw[i], d));
        if (norm == 0.0) throw domain_error("row " + std::to_string(ids[i]) + " is zero");
        for (std::size_t j = 0; j < d; ++j) r[j] = raw[i][j] / norm;
        s.ptrs[i] = r;
    }
    return s.ptrs;
}

}  // namespace mmc
