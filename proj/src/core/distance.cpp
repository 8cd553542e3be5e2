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

#include "mmc/core/distance.hpp"

#include <string>

#include "mmc/core/data_matrix.hpp"
#include "mmc/core/error.hpp"

namespace mmc {

double euclidean(std::span<const double> v, std::span<const double> c) {
    if (v.size() != c.size()) {
        throw usage_error("euclidean: dimension mismatch (" +
                          std::to_string(v.size()) + " vs " +
                          std::to_string(c.size()) + ")");
    }
    return distance(v.data(), c.data(), v.size());
}

double cosine_dissimilarity(std::span<const double> v, std::span<const double> c) {
    if (v.size() != c.size()) throw usage_error("cosine_dissimilarity: dimension mismatch");
    const double nv = std::sqrt(dot(v.data(), v.data(), v.size()));
    const double nc = std::sqrt(dot(c.data(), c.data(), c.size()));
    if (nv == 0.0 || nc == 0.0) throw domain_error("cosine_dissimilarity: zero-norm vector");
    double sim = dot(v.data(), c.data(), v.size()) / (nv * nc);
    // rounding can push |sim| a hair past 1
    if (sim > 1.0) sim = 1.0;
    if (sim < -1.0) sim = -1.0;
    return 1.0 - sim;
}

double sse(const data_matrix& m, const centroid_set& centroids,
           const assignment_vector& assign) {
    if (assign.size() != m.rows()) throw usage_error("sse: assignment length != n");
    if (centroids.d != m.cols()) throw usage_error("sse: dimension mismatch");
    double total = 0.0;
    for (index_t i = 0; i < m.rows(); ++i) {
        const cluster_t c = assign[i];
        if (c >= centroids.k) throw usage_error("sse: row is not assigned");
        total += squared_distance(m.row_ptr(i), centroids.row(c).data(), m.cols());
    }
    return total;
}

double centroid_set::update_drift() {
    double mx = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        drift[c] = distance(current.data() + c * d, previous.data() + c * d, d);
        if (drift[c] > mx) mx = drift[c];
    }
    return mx;
}

double centroid_set::max_drift() const {
    double mx = 0.0;
    for (double f : drift) mx = f > mx ? f : mx;
    return mx;
}

}  // namespace mmc
