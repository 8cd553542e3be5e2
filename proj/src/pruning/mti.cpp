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

#include "mmc/pruning/mti.hpp"

#include <limits>

#include "mmc/core/distance.hpp"

namespace mmc {

cluster_t nearest_centroid(const double* v, const centroid_set& cs, double& best,
                           worker_counters& ctr) {
    cluster_t arg = 0;
    best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cs.k; ++c) {
        const double dc = distance(v, cs.current.data() + c * cs.d, cs.d);
        if (dc < best) {
            best = dc;
            arg = static_cast<cluster_t>(c);
        }
    }
    ctr.dist_comps += cs.k;
    return arg;
}

mti_state::mti_state(index_t n, std::size_t k)
    : u(n, std::numeric_limits<double>::infinity()), assign(n, unassigned) {
    geo.k = k;
    geo.cdist.assign(k * k, 0.0);
    geo.s.assign(k, 0.0);
}

void mti_state::inflate_bounds(std::span<const double> drift) {
    for (index_t i = 0; i < u.size(); ++i) inflate(i, drift);
}

std::size_t mti_state::aux_bytes(unsigned threads, std::size_t d) const {
    const std::size_t k = geo.k;
    return u.size() * sizeof(double) + assign.size() * sizeof(cluster_t) + geo.bytes() +
           threads * (k * d * sizeof(std::int64_t) + k * sizeof(std::int32_t));
}

std::size_t measure_aux_memory(const mti_state& st, unsigned threads, std::size_t d) {
    return st.aux_bytes(threads, d);
}

point_outcome refine_point_mti(const double* v, index_t i, mti_state& st,
                               const centroid_set& cs, worker_counters& ctr) {
    point_outcome out;
    cluster_t a = st.assign[i];
    out.previous = a;
    if (a == unassigned) {
        double best = 0.0;
        out.cluster = st.assign[i] = nearest_centroid(v, cs, best, ctr);
        st.u[i] = best;
        return out;
    }
    const std::size_t d = cs.d;
    double u = st.u[i];
    bool tight = false;
    for (std::size_t cc = 0; cc < cs.k; ++cc) {
        const auto c = static_cast<cluster_t>(cc);
        if (c == a) continue;
        const double h = st.geo.half(a, c);
        if (bound_prunes(u, h, c, a)) {
            ++(tight ? ctr.prune_c3 : ctr.prune_c2);
            continue;
        }
        if (!tight) {
            u = distance(v, cs.current.data() + a * d, d);
            ++ctr.dist_comps;
            tight = true;
            if (bound_prunes(u, h, c, a)) {
                ++ctr.prune_c3;
                continue;
            }
        }
        const double dc = distance(v, cs.current.data() + cc * d, d);
        ++ctr.dist_comps;
        if (dc < u || (dc == u && c < a)) {
            a = c;
            u = dc;
        }
    }
    st.u[i] = u;
    st.assign[i] = a;
    out.cluster = a;
    return out;
}

point_outcome assign_point_mti(const double* v, index_t i, mti_state& st,
                               const centroid_set& cs, worker_counters& ctr) {
    if (st.clause1(i)) {
        ++ctr.prune_c1;
        return {st.assign[i], st.assign[i], true};
    }
    return refine_point_mti(v, i, st, cs, ctr);
}

}  // namespace mmc
