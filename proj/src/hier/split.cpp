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

#include "mmc/hier/split.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mmc/core/distance.hpp"
#include "mmc/core/error.hpp"

namespace mmc {

bool split_decision_hmeans(unsigned level, unsigned max_level, bool has_distinct_points) {
    return level < max_level && has_distinct_points;
}

double bic_score(const gaussian_fit& fit) {
    std::uint64_t r = 0;
    for (auto s : fit.sizes) r += s;
    const double R = static_cast<double>(r);
    const double M = static_cast<double>(fit.dims);
    const double K = static_cast<double>(fit.sizes.size());
    if (r == 0 || fit.dims == 0) return -std::numeric_limits<double>::infinity();
    const double var = fit.sse / (R * M);
    if (!(var > 0.0)) return -std::numeric_limits<double>::infinity();
    double loglik = 0.0;
    for (auto s : fit.sizes) {
        if (s > 0) loglik += static_cast<double>(s) * std::log(static_cast<double>(s) / R);
    }
    loglik -= R * M / 2.0 * std::log(2.0 * std::numbers::pi * var);
    loglik -= R * M / 2.0;
    const double params = (K - 1.0) + M * K + 1.0;
    return loglik - params / 2.0 * std::log(R);
}

bool split_decision_xmeans(const gaussian_fit& one, const gaussian_fit& two) {
    for (auto s : two.sizes) {
        if (s == 0) return false;
    }
    return bic_score(two) > bic_score(one);
}

double anderson_darling_critical(double alpha) {
    struct row {
        double alpha, value;
    };
    static constexpr row table[] = {
        {0.1, 0.631}, {0.05, 0.752}, {0.025, 0.873}, {0.01, 1.035}, {0.0001, 1.8692}};
    for (const auto& r : table) {
        if (std::abs(alpha - r.alpha) <= 1e-12 * r.alpha) return r.value;
    }
    throw usage_error("unsupported significance level " + std::to_string(alpha) +
                      " (use 0.1, 0.05, 0.025, 0.01 or 0.0001)");
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double anderson_darling_statistic(std::vector<double> x) {
    const std::size_t m = x.size();
    if (m < 2) return std::numeric_limits<double>::quiet_NaN();
    long double mean = 0.0L;
    for (double v : x) mean += v;
    mean /= static_cast<long double>(m);
    long double ss = 0.0L;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double sd = static_cast<double>(std::sqrt(ss / static_cast<long double>(m - 1)));
    if (!(sd > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    for (double& v : x) v = static_cast<double>((v - mean) / sd);
    std::sort(x.begin(), x.end());

    constexpr double tiny = std::numeric_limits<double>::denorm_min();
    long double acc = 0.0L;
    for (std::size_t j = 1; j <= m; ++j) {
        const double lo = std::max(normal_cdf(x[j - 1]), tiny);
        // upper tail via erfc keeps precision for large z
        const double hi = std::max(0.5 * std::erfc(x[m - j] / std::numbers::sqrt2), tiny);
        acc += static_cast<long double>(2 * j - 1) * (std::log(lo) + std::log(hi));
    }
    const double md = static_cast<double>(m);
    const double a2 = static_cast<double>(-md - acc / md);
    return a2 * (1.0 + 4.0 / md - 25.0 / (md * md));
}

bool anderson_darling_decision(std::span<const double> projections, double alpha) {
    const double critical = anderson_darling_critical(alpha);
    if (projections.size() < 8) return false;
    const double stat = anderson_darling_statistic({projections.begin(), projections.end()});
    if (std::isnan(stat)) return false;
    return stat > critical;
}

bool anderson_darling_decision(std::span<const double> points, std::size_t d,
                               std::span<const double> c1, std::span<const double> c2,
                               double alpha) {
    if (c1.size() != d || c2.size() != d) throw usage_error("child centroid dimension mismatch");
    std::vector<double> w(d);
    for (std::size_t j = 0; j < d; ++j) w[j] = c1[j] - c2[j];
    if (dot(w.data(), w.data(), d) == 0.0) {
        anderson_darling_critical(alpha);
        return false;
    }
    std::vector<double> proj(points.size() / d);
    for (std::size_t i = 0; i < proj.size(); ++i) proj[i] = dot(points.data() + i * d, w.data(), d);
    return anderson_darling_decision(proj, alpha);
}

}  // namespace mmc
