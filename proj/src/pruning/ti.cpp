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

#include "mmc/pruning/ti.hpp"

#include <algorithm>
#include <limits>

#include "mmc/core/distance.hpp"

namespace mmc {

ti_state::ti_state(index_t n, std::size_t k)
    : u(n, std::numeric_limits<double>::infinity()), lower(n * k, 0.0), assign(n, unassigned) {
    geo.k = k;
    geo.cdist.assign(k * k, 0.0);
    geo.s.assign(k, 0.0);
}

void ti_state::inflate(index_t i, std::span<const double> drift) {
    if (assign[i] == unassigned) return;
    u[i] += drift[assign[i]];
    double* lo = lower_row(i);
    for (std::size_t c = 0; c < geo.k; ++c) lo[c] = std::max(0.0, lo[c] - drift[c]);
}

void ti_state::inflate_bounds(std::span<const double> drift) {
    for (index_t i = 0; i < u.size(); ++i) inflate(i, drift);
}

std::size_t ti_state::aux_bytes(unsigned threads, std::size_t d) const {
    const std::size_t k = geo.k;
    return u.size() * sizeof(double) + lower.size() * sizeof(double) +
           assign.size() * sizeof(cluster_t) + geo.bytes() +
           threads * (k * d * sizeof(std::int64_t) + k * sizeof(std::int32_t));
}

std::size_t measure_aux_memory(const ti_state& st, unsigned threads, std::size_t d) {
    return st.aux_bytes(threads, d);
}

point_outcome refine_point_ti(const double* v, index_t i, ti_state& st, const centroid_set& cs,
                              worker_counters& ctr) {
    point_outcome out;
    const std::size_t d = cs.d;
    const std::size_t k = cs.k;
    double* lo = st.lower_row(i);
    cluster_t a = st.assign[i];
    out.previous = a;
    if (a == unassigned) {
        double best = std::numeric_limits<double>::infinity();
        cluster_t arg = 0;
        for (std::size_t c = 0; c < k; ++c) {
            lo[c] = distance(v, cs.current.data() + c * d, d);
            if (lo[c] < best) {
                best = lo[c];
                arg = static_cast<cluster_t>(c);
            }
        }
        ctr.dist_comps += k;
        st.u[i] = best;
        out.cluster = st.assign[i] = arg;
        return out;
    }
    // Tighten exactly when clause 1 fails so u follows the same trajectory
    // as the MTI bound.
    double u = distance(v, cs.current.data() + a * d, d);
    ++ctr.dist_comps;
    lo[a] = u;
    for (std::size_t cc = 0; cc < k; ++cc) {
        const auto c = static_cast<cluster_t>(cc);
        if (c == a) continue;
        if (bound_prunes(u, st.geo.half(a, c), c, a)) {
            ++ctr.prune_c2;
            continue;
        }
        if (bound_prunes(u, lo[c], c, a)) {
            ++ctr.prune_c3;
            continue;
        }
        const double dc = distance(v, cs.current.data() + cc * d, d);
        ++ctr.dist_comps;
        lo[c] = dc;
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

point_outcome assign_point_ti(const double* v, index_t i, ti_state& st, const centroid_set& cs,
                              worker_counters& ctr) {
    if (st.clause1(i)) {
        ++ctr.prune_c1;
        return {st.assign[i], st.assign[i], true};
    }
    return refine_point_ti(v, i, st, cs, ctr);
}

}  // namespace mmc
