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

#include "mmc/algorithms/kmeanspp.hpp"

#include <limits>

#include "mmc/core/error.hpp"
#include "mmc/core/mixture.hpp"

namespace mmc {

std::uint64_t run_seed(std::uint64_t seed, unsigned run) {
    return run == 0 ? seed : mix_seed(seed, 0x7275'6e00ULL + run);
}

multirun_result kmeanspp_multirun(row_source& src, kmeans_params p, unsigned runs,
                                  const engine_config& cfg) {
    if (runs == 0) throw usage_error("run count must be at least 1");
    multirun_result out;
    double best = std::numeric_limits<double>::infinity();
    const std::uint64_t base = p.init.seed;
    p.initial.reset();
    for (unsigned r = 0; r < runs; ++r) {
        p.init = {init_method::plusplus, run_seed(base, r)};
        mm_result res = kmeans(src, p, cfg);
        const double sse =
            res.metrics.empty() ? std::numeric_limits<double>::infinity() : res.metrics.back().objective;
        out.run_sse.push_back(sse);
        out.run_seeds.push_back(p.init.seed);
        if (r == 0 || sse < best) {
            best = sse;
            out.best = std::move(res);
            out.best_run = r;
        }
    }
    return out;
}

multirun_result kmeanspp_multirun(const data_matrix& m, kmeans_params p, unsigned runs,
                                  const engine_config& cfg) {
    memory_source src(m);
    return kmeanspp_multirun(src, std::move(p), runs, cfg);
}

}  // namespace mmc
