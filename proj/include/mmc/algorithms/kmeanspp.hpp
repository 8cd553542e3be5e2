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

#ifndef MMC_ALGORITHMS_KMEANSPP_HPP
#define MMC_ALGORITHMS_KMEANSPP_HPP

#include <vector>

#include "mmc/algorithms/kmeans.hpp"

namespace mmc {

struct multirun_result {
    mm_result best;
    unsigned best_run = 0;
    std::vector<double> run_sse;   // final SSE of each run, in run order
    std::vector<std::uint64_t> run_seeds;
};

// Seed used by run r of a multi-run started from `seed`.
std::uint64_t run_seed(std::uint64_t seed, unsigned run);

/// r independent k-means runs, each seeded with k-means++ from run_seed().
/// Returns the run with the lowest final SSE; ties go to the earlier run.
multirun_result kmeanspp_multirun(row_source& src, kmeans_params p, unsigned runs,
                                  const engine_config& cfg);
multirun_result kmeanspp_multirun(const data_matrix& m, kmeans_params p, unsigned runs,
                                  const engine_config& cfg);

}  // namespace mmc

#endif
