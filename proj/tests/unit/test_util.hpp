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

#ifndef MMC_TESTS_TEST_UTIL_HPP
#define MMC_TESTS_TEST_UTIL_HPP

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <unistd.h>

#include "mmc/core/data_matrix.hpp"
#include "mmc/core/mixture.hpp"

namespace mmc::test {

// Fresh directory under $TMPDIR, unique per process and tag.
inline std::filesystem::path scratch_dir(const std::string& tag) {
    const char* base = std::getenv("TMPDIR");
    std::filesystem::path p = base ? base : std::filesystem::temp_directory_path();
    p /= "mmc_" + tag + "_" + std::to_string(::getpid());
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

inline data_matrix uniform_matrix(std::size_t n, std::size_t d, std::uint64_t seed,
                                  double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n * d);
    for (auto& x : v) x = u(rng);
    return data_matrix(n, d, std::move(v));
}

inline mixture blobs(std::size_t n, std::size_t d, std::size_t k, double sep, std::uint64_t seed) {
    mixture_spec s;
    s.n = n;
    s.d = d;
    s.true_k = k;
    s.separation = sep;
    s.seed = seed;
    return generate_mixture(s);
}

}  // namespace mmc::test

#endif
