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

#include "mmc/engine/metrics.hpp"

#include <iomanip>
#include <ostream>

namespace mmc {

void worker_counters::merge(const worker_counters& o) {
    dist_comps += o.dist_comps;
    prune_c1 += o.prune_c1;
    prune_c2 += o.prune_c2;
    prune_c3 += o.prune_c3;
    reassigned += o.reassigned;
    rows_req += o.rows_req;
    bytes_req += o.bytes_req;
    bytes_read += o.bytes_read;
    pages_read += o.pages_read;
    cache_hits += o.cache_hits;
    cache_misses += o.cache_misses;
}

void iteration_metrics::absorb(const worker_counters& c) {
    dist_comps += c.dist_comps;
    prune_c1 += c.prune_c1;
    prune_c2 += c.prune_c2;
    prune_c3 += c.prune_c3;
    reassigned += c.reassigned;
    rows_req += c.rows_req;
    bytes_req += c.bytes_req;
    bytes_read += c.bytes_read;
    cache_hits += c.cache_hits;
    cache_misses += c.cache_misses;
}

double iteration_metrics::hit_rate() const {
    const auto total = cache_hits + cache_misses;
    return total == 0 ? 0.0 : static_cast<double>(cache_hits) / static_cast<double>(total);
}

void write_metrics_row(std::ostream& out, const iteration_metrics& m) {
    out << m.iter << ',' << std::fixed << std::setprecision(3) << m.wall_ms << ','
        << std::defaultfloat << std::setprecision(17) << m.objective << ',' << m.dist_comps << ','
        << m.prune_c1 << ',' << m.prune_c2 << ',' << m.prune_c3 << ',' << m.reassigned << ','
        << m.rows_req << ',' << m.bytes_req << ',' << m.bytes_read << ',' << m.cache_hits << ','
        << m.cache_misses << ',' << m.aux_bytes;
}

void write_metrics_csv(std::ostream& out, const std::vector<iteration_metrics>& ms) {
    out << metrics_csv_header << '\n';
    for (const auto& m : ms) {
        write_metrics_row(out, m);
        out << '\n';
    }
}

}  // namespace mmc
