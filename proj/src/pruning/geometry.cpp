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

#include "mmc/pruning/geometry.hpp"

#include <limits>

#include "mmc/core/distance.hpp"

namespace mmc {

void update_centroid_geometry(const centroid_set& cs, centroid_geometry& geo) {
    const std::size_t k = cs.k;
    geo.k = k;
    geo.cdist.assign(k * k, 0.0);
    geo.s.assign(k, std::numeric_limits<double>::infinity());
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            const double dab = distance(cs.current.data() + a * cs.d, cs.current.data() + b * cs.d, cs.d);
            geo.cdist[a * k + b] = dab;
            geo.cdist[b * k + a] = dab;
        }
    }
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            if (a != b && 0.5 * geo.cdist[a * k + b] < geo.s[a]) geo.s[a] = 0.5 * geo.cdist[a * k + b];
        }
    }
}

centroid_geometry update_centroid_geometry(const centroid_set& cs) {
    centroid_geometry g;
    update_centroid_geometry(cs, g);
    return g;
}

}  // namespace mmc
