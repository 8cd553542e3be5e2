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

#ifndef MMC_ENGINE_CONFIG_HPP
#define MMC_ENGINE_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "mmc/core/types.hpp"

namespace mmc {

enum class sched_mode {
    steal,     // partitioned queues, home partition first, then steal
    fixed,     // static: a worker only drains the partitions it owns
    fifo       // one shared queue in row order
};

enum class converge_mode {
    fraction,    // reassigned / n <= tol
    drift,       // max centroid drift <= tol
    iterations   // never converges early; runs max_iters
};

struct engine_config {
    unsigned threads = 1;
    unsigned partitions = 0;        // 0: one per thread
    unsigned locality_groups = 0;   // 0: min(2, partitions)
    std::size_t task_size = 8192;
    unsigned max_iters = 20;
    double tol = 0.0;
    converge_mode convergence = converge_mode::fraction;
    sched_mode scheduler = sched_mode::steal;
    std::uint64_t seed = 1;
    // Nonzero: shuffle the task order inside every queue with this seed.
    // Changes which worker processes which rows, never the result.
    std::uint64_t task_shuffle_seed = 0;

    void validate() const;
    unsigned partition_count() const { return partitions == 0 ? threads : partitions; }
    unsigned group_count() const;
};

std::string_view to_string(sched_mode m);
std::string_view to_string(converge_mode m);
sched_mode parse_sched_mode(std::string_view s);
converge_mode parse_converge_mode(std::string_view s);

bool check_convergence(const centroid_set& centroids, std::uint64_t reassigned,
                       std::uint64_t n, double tol, converge_mode mode);

}  // namespace mmc

#endif
