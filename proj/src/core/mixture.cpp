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

#include "mmc/core/mixture.hpp"

#include <cmath>
#include <random>
#include <string>

#include "mmc/core/distance.hpp"
#include "mmc/core/error.hpp"

namespace mmc {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void mixture_spec::validate() const {
    if (n == 0 || d == 0) throw usage_error("mixture: n and d must be >= 1");
    if (true_k == 0) throw usage_error("mixture: true_k must be >= 1");
    if (true_k > n) throw usage_error("mixture: true_k must not exceed n");
    if (!(separation > 0.0) || !std::isfinite(separation)) {
        throw usage_error("mixture: separation must be a positive finite number");
    }
}

mixture generate_mixture(const mixture_spec& spec, unsigned partitions) {
    spec.validate();
    const std::size_t d = spec.d, k = spec.true_k;
    std::mt19937_64 center_rng(mix_seed(spec.seed, 0));
    std::mt19937_64 point_rng(mix_seed(spec.seed, 1));

    // Rejection-sample centers in a box that grows whenever placement stalls.
    const double per_axis = std::ceil(std::pow(static_cast<double>(k), 1.0 / static_cast<double>(d)));
    double side = 2.0 * spec.separation * std::max(1.0, per_axis);
    std::vector<double> centers;
    centers.reserve(k * d);
    std::vector<double> cand(d);
    while (centers.size() < k * d) {
        bool placed = false;
        for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
            std::uniform_real_distribution<double> u(0.0, side);
            for (auto& x : cand) x = u(center_rng);
            placed = true;
            for (std::size_t c = 0; c * d < centers.size(); ++c) {
                if (distance(cand.data(), centers.data() + c * d, d) < spec.separation) {
                    placed = false;
                    break;
                }
            }
        }
        if (placed) {
            centers.insert(centers.end(), cand.begin(), cand.end());
        } else {
            side *= 1.5;
        }
    }

    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> values(spec.n * d);
    std::vector<cluster_t> labels(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const auto c = static_cast<cluster_t>(i % k);
        labels[i] = c;
        for (std::size_t j = 0; j < d; ++j) values[i * d + j] = centers[c * d + j] + noise(point_rng);
    }
    return {data_matrix(spec.n, d, std::move(values), partitions), std::move(labels),
            std::move(centers)};
}

}  // namespace mmc
