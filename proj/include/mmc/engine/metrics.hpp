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

#ifndef MMC_ENGINE_METRICS_HPP
#define MMC_ENGINE_METRICS_HPP

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace mmc {

// Per-worker tallies. Padded so neighbouring workers never share a line.
struct alignas(64) worker_counters {
    std::uint64_t dist_comps = 0;
    std::uint64_t prune_c1 = 0;
    std::uint64_t prune_c2 = 0;
    std::uint64_t prune_c3 = 0;
    std::uint64_t reassigned = 0;
    std::uint64_t rows_req = 0;
    std::uint64_t bytes_req = 0;
    std::uint64_t bytes_read = 0;
    std::uint64_t pages_read = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t cache_misses = 0;

    void merge(const worker_counters& o);
};

struct iteration_metrics {
    unsigned iter = 0;
    double wall_ms = 0.0;
    double objective = 0.0;
    std::uint64_t dist_comps = 0;
    std::uint64_t prune_c1 = 0;
    std::uint64_t prune_c2 = 0;
    std::uint64_t prune_c3 = 0;
    std::uint64_t reassigned = 0;
    std::uint64_t rows_req = 0;
    std::uint64_t bytes_req = 0;
    std::uint64_t bytes_read = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t cache_misses = 0;
    std::uint64_t aux_bytes = 0;

    void absorb(const worker_counters& c);
    double hit_rate() const;   // hits / (hits + misses); 0 when nothing was requested
};

inline constexpr std::string_view metrics_csv_header =
    "iter,wall_ms,objective,dist_comps,prune_c1,prune_c2,prune_c3,reassigned,"
    "rows_req,bytes_req,bytes_read,cache_hits,cache_misses,aux_bytes";

void write_metrics_row(std::ostream& out, const iteration_metrics& m);
void write_metrics_csv(std::ostream& out, const std::vector<iteration_metrics>& ms);

}  // namespace mmc

#endif
