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
#ifndef MMC_CORE_DISTANCE_HPP
#define MMC_CORE_DISTANCE_HPP

#include <cmath>
#include <cstddef>
#include <span>

#include "mmc/core/types.hpp"

namespace mmc {

class data_matrix;

// Unchecked kernels used on hot paths. Summation is in ascending index order.
inline double squared_distance(const double* a, const double* b, std::size_t d) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double diff = a[j] - b[j];
        acc += diff * diff;
    }
    return acc;
}

inline double distance(const double* a, const double* b, std::size_t d) {
    return std::sqrt(squared_distance(a, b, d));
}

inline double dot(const double* a, const double* b, std::size_t d) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) acc += a[j] * b[j];
    return acc;
}

// L2 distance. Throws usage_error on a dimension mismatch.
double euclidean(std::span<const double> v, std::span<const double> c);

// 1 - cos(v, c), in [0, 2]. Throws domain_error when either norm is zero.
double cosine_dissimilarity(std::span<const double> v, std::span<const double> c);

// Sum over rows of the squared distance to the assigned centroid.
double sse(const data_matrix& m, const centroid_set& centroids,
           const assignment_vector& assign);

}  // namespace mmc

#endif
