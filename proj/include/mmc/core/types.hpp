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
#ifndef MMC_CORE_TYPES_HPP
#define MMC_CORE_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace mmc {

using index_t = std::uint64_t;
using cluster_t = std::uint32_t;

inline constexpr cluster_t unassigned = std::numeric_limits<cluster_t>::max();

// One cluster id per row; `unassigned` before the first iteration.
using assignment_vector = std::vector<cluster_t>;

/**
 * k centroids of dimension d together with the previous iteration's copy,
 * membership counts and per-centroid drift d(current[c], previous[c]).
 */
struct centroid_set {
    std::size_t k = 0;
    std::size_t d = 0;
    std::vector<double> current;
    std::vector<double> previous;
    std::vector<std::uint64_t> counts;
    std::vector<double> drift;

    centroid_set() = default;
    centroid_set(std::size_t k, std::size_t d)
        : k(k), d(d), current(k * d, 0.0), previous(k * d, 0.0),
          counts(k, 0), drift(k, 0.0) {}

    std::span<double> row(std::size_t c) { return {current.data() + c * d, d}; }
    std::span<const double> row(std::size_t c) const {
        return {current.data() + c * d, d};
    }
    const double* data() const { return current.data(); }

    // Copies current into previous.
    void snapshot() { previous = current; }
    // Recomputes drift from previous and current; returns the largest drift.
    double update_drift();
    double max_drift() const;
};

}  // namespace mmc

#endif
