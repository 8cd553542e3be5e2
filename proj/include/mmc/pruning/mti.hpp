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

#ifndef MMC_PRUNING_MTI_HPP
#define MMC_PRUNING_MTI_HPP

#include <span>
#include <vector>

#include "mmc/core/types.hpp"
#include "mmc/engine/metrics.hpp"
#include "mmc/pruning/geometry.hpp"

namespace mmc {

struct point_outcome {
    cluster_t cluster = unassigned;
    cluster_t previous = unassigned;
    bool clause1 = false;   // kept without touching the row
    bool changed() const { return cluster != previous; }
};

// Exhaustive nearest centroid, lowest index on ties. Counts k distances.
cluster_t nearest_centroid(const double* v, const centroid_set& cs, double& best,
                           worker_counters& ctr);

/**
 * Upper bound per point plus centroid geometry. Memory is n doubles, n ids
 * and a k x k matrix; nothing scales with n * k.
 *
 * u[i] and assign[i] are only written by the worker processing row i.
 */
class mti_state {
public:
    mti_state() = default;
    mti_state(index_t n, std::size_t k);

    index_t rows() const { return u.size(); }
    std::size_t clusters() const { return geo.k; }

    // u[i] += drift[assign[i]] for every assigned row.
    void inflate_bounds(std::span<const double> drift);
    void inflate(index_t i, std::span<const double> drift) {
        if (assign[i] != unassigned) u[i] += drift[assign[i]];
    }
    bool clause1(index_t i) const {
        const cluster_t a = assign[i];
        return a != unassigned && (u[i] < geo.s[a] || (u[i] == geo.s[a] && a == 0));
    }

    // Bytes held besides the data and the centroids, for T workers each
    // owning a k x d sum block and k counts.
    std::size_t aux_bytes(unsigned threads, std::size_t d) const;

    std::vector<double> u;
    assignment_vector assign;
    centroid_geometry geo;
};

// Full clause cascade for one point: clause 1, then the per-candidate test
// with the stale bound (clause 2), then with the bound tightened once to the
// true distance (clause 3). The result is the exact nearest centroid.
point_outcome assign_point_mti(const double* v, index_t i, mti_state& st,
                               const centroid_set& cs, worker_counters& ctr);

// Same as assign_point_mti for a row known to fail clause 1.
point_outcome refine_point_mti(const double* v, index_t i, mti_state& st,
                               const centroid_set& cs, worker_counters& ctr);

std::size_t measure_aux_memory(const mti_state& st, unsigned threads, std::size_t d);

}  // namespace mmc

#endif
