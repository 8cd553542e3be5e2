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

#ifndef MMC_HIER_SPLIT_HPP
#define MMC_HIER_SPLIT_HPP

#include <span>
#include <vector>

#include "mmc/core/types.hpp"

namespace mmc {

// Split while below the level cap and the leaf holds two distinct points.
bool split_decision_hmeans(unsigned level, unsigned max_level, bool has_distinct_points);

/// Fit summary of a leaf under a model with `sizes.size()` spherical
/// Gaussian centers: member counts per center and the total squared
/// distance of members to their centers.
struct gaussian_fit {
    std::vector<std::uint64_t> sizes;
    double sse = 0.0;
    std::size_t dims = 0;
};

/// Hard-assignment spherical Gaussian BIC with the maximum-likelihood
/// variance sse / (R * M):
///   log L = sum_j R_j log(R_j / R) - R M / 2 log(2 pi var) - R M / 2
///   BIC   = log L - p / 2 log R,  p = (K - 1) + M K + 1.
/// Zero variance yields -infinity.
double bic_score(const gaussian_fit& fit);

// X-means rule: split iff the two-center BIC beats the one-center BIC.
bool split_decision_xmeans(const gaussian_fit& one, const gaussian_fit& two);

// Critical value of the corrected statistic for the supported levels
// 0.1, 0.05, 0.025, 0.01 and 0.0001. Other levels are a usage error.
double anderson_darling_critical(double alpha);

// Standard normal CDF.
double normal_cdf(double z);

/// Corrected Anderson-Darling statistic A2 * (1 + 4/m - 25/m^2) of a sample
/// against the normal law, after standardising with the sample mean and the
/// (m - 1) standard deviation. Returns NaN for m < 2 or zero variance.
double anderson_darling_statistic(std::vector<double> sample);

/// G-means rule: project the points onto c1 - c2 and split iff the corrected
/// statistic exceeds the critical value for alpha. Declines for fewer than
/// eight points or a degenerate projection.
bool anderson_darling_decision(std::span<const double> projections, double alpha);
bool anderson_darling_decision(std::span<const double> points, std::size_t d,
                               std::span<const double> c1, std::span<const double> c2,
                               double alpha);

}  // namespace mmc

#endif
