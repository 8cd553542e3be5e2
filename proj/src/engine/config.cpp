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

#include "mmc/engine/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmc/core/error.hpp"

namespace mmc {

void engine_config::validate() const {
    if (threads < 1) throw usage_error("threads must be >= 1");
    if (task_size < 1) throw usage_error("task size must be >= 1");
    if (!(tol >= 0.0) || !std::isfinite(tol)) throw usage_error("tolerance must be finite and >= 0");
    if (locality_groups > partition_count()) {
        throw usage_error("locality groups cannot exceed the partition count");
    }
}

unsigned engine_config::group_count() const {
    const unsigned p = partition_count();
    if (locality_groups != 0) return locality_groups;
    return std::min(2u, p);
}

std::string_view to_string(sched_mode m) {
    switch (m) {
        case sched_mode::steal: return "steal";
        case sched_mode::fixed: return "static";
        case sched_mode::fifo: return "fifo";
    }
    return "?";
}

std::string_view to_string(converge_mode m) {
    switch (m) {
        case converge_mode::fraction: return "fraction";
        case converge_mode::drift: return "drift";
        case converge_mode::iterations: return "iterations";
    }
    return "?";
}

sched_mode parse_sched_mode(std::string_view s) {
    if (s == "steal" || s == "partitioned_stealing") return sched_mode::steal;
    if (s == "static") return sched_mode::fixed;
    if (s == "fifo") return sched_mode::fifo;
    throw usage_error("unknown scheduler '" + std::string(s) + "' (expected steal, static, fifo)");
}

converge_mode parse_converge_mode(std::string_view s) {
    if (s == "fraction") return converge_mode::fraction;
    if (s == "drift") return converge_mode::drift;
    if (s == "iterations") return converge_mode::iterations;
    throw usage_error("unknown convergence mode '" + std::string(s) +
                      "' (expected fraction, drift, iterations)");
}

bool check_convergence(const centroid_set& centroids, std::uint64_t reassigned, std::uint64_t n,
                       double tol, converge_mode mode) {
    switch (mode) {
        case converge_mode::fraction:
            if (n == 0) return true;
            // compare as reassigned <= tol * n without the rounding of a division
            return static_cast<double>(reassigned) <= tol * static_cast<double>(n);
        case converge_mode::drift:
            return centroids.max_drift() <= tol;
        case converge_mode::iterations:
            return false;
    }
    return false;
}

}  // namespace mmc
