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

#ifndef MMC_CLI_OPTIONS_HPP
#define MMC_CLI_OPTIONS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "mmc/core/mixture.hpp"
#include "mmc/engine/config.hpp"

namespace mmc::cli {

inline constexpr std::array<std::string_view, 9> algorithm_names = {
    "kmeans", "skmeans", "kmeanspp", "mbkmeans", "fcmeans",
    "kmedoids", "hmeans", "xmeans", "gmeans"};

// Throws usage_error naming every supported algorithm.
void check_algorithm(std::string_view name);
bool is_hierarchical(std::string_view name);

struct gen_options {
    mixture_spec spec;
    std::string out = ".";
};

struct run_options {
    std::string data;
    std::size_t n = 0;
    std::size_t d = 0;
    std::string alg = "kmeans";
    std::size_t k = 4;
    std::string init = "forgy";
    std::string prune = "mti";
    std::string sched = "steal";
    std::string convergence = "fraction";
    unsigned threads = 1;
    unsigned partitions = 0;
    std::size_t task_size = 8192;
    unsigned max_iters = 20;
    double tol = 0.0;
    std::string mode = "im";
    std::size_t rc_bytes = std::size_t{64} << 20;
    std::string rc_mode = "lazy";
    unsigned icache = 5;
    std::size_t page_bytes = 4096;
    double z = 2.0;
    double batch_frac = 0.2;
    double sample_pct = 10.0;
    unsigned runs = 10;
    std::size_t kmax = 32;
    unsigned lmax = 4;
    double alpha = 0.0001;
    std::uint64_t seed = 1;
    std::string out = ".";

    // Checks every field; throws usage_error.
    void validate() const;
    engine_config engine() const;
};

}  // namespace mmc::cli

#endif
