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

#ifndef MMC_PRUNING_GEOMETRY_HPP
#define MMC_PRUNING_GEOMETRY_HPP

#include <vector>

#include "mmc/core/types.hpp"

namespace mmc {

// Pairwise centroid distances and the per-centroid safe radius
// s[c] = 0.5 * min over c' != c of cdist[c][c'] (+inf when k == 1).
struct centroid_geometry {
    std::size_t k = 0;
    std::vector<double> cdist;   // k x k, symmetric, zero diagonal
    std::vector<double> s;

    double between(cluster_t a, cluster_t b) const { return cdist[a * k + b]; }
    double half(cluster_t a, cluster_t b) const { return 0.5 * cdist[a * k + b]; }
    std::size_t bytes() const { return (cdist.size() + s.size()) * sizeof(double); }
};

// Recomputes cdist and s in place. Costs k(k-1)/2 distances, which are not
// counted as point-centroid computations.
void update_centroid_geometry(const centroid_set& cs, centroid_geometry& geo);
centroid_geometry update_centroid_geometry(const centroid_set& cs);

// A candidate c with lower bound `bound` on d(v, c) cannot beat the current
// cluster a at distance <= u. Equality only prunes when c would lose the
// lowest-index tie-break anyway.
inline bool bound_prunes(double u, double bound, cluster_t c, cluster_t a) {
    return u < bound || (u == bound && c > a);
}

}  // namespace mmc

#endif
