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

#ifndef MMC_PRUNING_TI_HPP
#define MMC_PRUNING_TI_HPP

#include <span>
#include <vector>

#include "mmc/pruning/mti.hpp"

namespace mmc {

/// Elkan-style bounds: an upper bound per point and a lower bound per
/// (point, centroid) pair. Kept as the n x k baseline for comparisons.
class ti_state {
public:
    ti_state() = default;
    ti_state(index_t n, std::size_t k);

    index_t rows() const { return u.size(); }
    std::size_t clusters() const { return geo.k; }

    // u grows by the drift of the assigned centroid; every lower bound
    // shrinks by its centroid's drift, floored at zero.
    void inflate(index_t i, std::span<const double> drift);
    void inflate_bounds(std::span<const double> drift);
    bool clause1(index_t i) const {
        const cluster_t a = assign[i];
        return a != unassigned && (u[i] < geo.s[a] || (u[i] == geo.s[a] && a == 0));
    }
    double* lower_row(index_t i) { return lower.data() + i * geo.k; }
    const double* lower_row(index_t i) const { return lower.data() + i * geo.k; }

    std::size_t aux_bytes(unsigned threads, std::size_t d) const;

    std::vector<double> u;
    std::vector<double> lower;
    assignment_vector assign;
    centroid_geometry geo;
};

point_outcome assign_point_ti(const double* v, index_t i, ti_state& st, const centroid_set& cs,
                              worker_counters& ctr);
point_outcome refine_point_ti(const double* v, index_t i, ti_state& st, const centroid_set& cs,
                              worker_counters& ctr);

std::size_t measure_aux_memory(const ti_state& st, unsigned threads, std::size_t d);

}  // namespace mmc

#endif
