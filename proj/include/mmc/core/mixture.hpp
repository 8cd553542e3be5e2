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
#ifndef MMC_CORE_MIXTURE_HPP
#define MMC_CORE_MIXTURE_HPP

#include <cstdint>
#include <vector>

#include "mmc/core/data_matrix.hpp"

namespace mmc {

/// Isotropic Gaussian mixture with unit within-cluster standard deviation.
/// `separation` is the minimum pairwise distance between centers, measured
/// in within-cluster standard deviations.
struct mixture_spec {
    std::size_t n = 1000;
    std::size_t d = 8;
    std::size_t true_k = 4;
    double separation = 20.0;
    std::uint64_t seed = 1;

    void validate() const;
};

struct mixture {
    data_matrix data;
    std::vector<cluster_t> labels;   // row i belongs to center labels[i]
    std::vector<double> centers;     // true_k x d
};

/// Row i is drawn around center i % true_k, so cluster sizes differ by at
/// most one and clusters interleave across the file. Deterministic in seed.
mixture generate_mixture(const mixture_spec& spec, unsigned partitions = 1);

// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace mmc

#endif
