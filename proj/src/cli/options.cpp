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

#include "mmc/cli/options.hpp"

#include <algorithm>

#include "mmc/algorithms/init.hpp"
#include "mmc/algorithms/kmeans.hpp"
#include "mmc/core/error.hpp"
#include "mmc/extmem/row_cache.hpp"

namespace mmc::cli {

void check_algorithm(std::string_view name) {
    if (std::find(algorithm_names.begin(), algorithm_names.end(), name) != algorithm_names.end()) {
        return;
    }
    std::string list;
    for (auto a : algorithm_names) {
        if (!list.empty()) list += ", ";
        list += a;
    }
    throw usage_error("unknown algorithm '" + std::string(name) + "'; expected one of: " + list);
}

bool is_hierarchical(std::string_view name) {
    return name == "hmeans" || name == "xmeans" || name == "gmeans";
}

void run_options::validate() const {
    check_algorithm(alg);
    if (data.empty()) throw usage_error("--data is required");
    if (n == 0 || d == 0) throw usage_error("--n and --d must be positive");
    if (k == 0 && !is_hierarchical(alg)) throw usage_error("--k must be positive");
    if (k > n) throw usage_error("--k exceeds --n");
    parse_init_method(init);
    parse_prune_mode(prune);
    parse_cache_mode(rc_mode);
    if (mode != "im" && mode != "sem") throw usage_error("--mode must be im or sem");
    if (!(z > 1.0)) throw usage_error("--z must be greater than 1");
    if (!(batch_frac > 0.0 && batch_frac <= 1.0)) throw usage_error("--batch-frac must be in (0, 1]");
    if (!(sample_pct > 0.0 && sample_pct <= 100.0)) throw usage_error("--sample-pct must be in (0, 100]");
    if (runs == 0) throw usage_error("--runs must be at least 1");
    if (kmax == 0) throw usage_error("--kmax must be at least 1");
    if (lmax == 0) throw usage_error("--lmax must be at least 1");
    if (page_bytes == 0) throw usage_error("--page-bytes must be positive");
    engine().validate();
}

engine_config run_options::engine() const {
    engine_config c;
    c.threads = threads;
    c.partitions = partitions;
    c.task_size = task_size;
    c.max_iters = max_iters;
    c.tol = tol;
    c.convergence = parse_converge_mode(convergence);
    c.scheduler = parse_sched_mode(sched);
    c.seed = seed;
    return c;
}

}  // namespace mmc::cli
