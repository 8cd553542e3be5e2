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

#ifndef MMC_CLI_COMMANDS_HPP
#define MMC_CLI_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "mmc/cli/options.hpp"
#include "mmc/core/types.hpp"
#include "mmc/engine/metrics.hpp"
#include "mmc/hier/htree.hpp"

namespace mmc::cli {

struct run_output {
    centroid_set centroids;
    assignment_vector assign;
    std::vector<point_key> keys;       // hierarchical runs only
    std::vector<index_t> medoids;      // kmedoids only
    std::vector<iteration_metrics> metrics;
    unsigned iterations = 0;
    bool converged = false;
};

// Runs one configuration in memory; writes nothing.
run_output execute_run(const run_options& o);

// Counter invariants of one run: requested bytes match requested rows, hits
// plus misses match requested rows in sem mode, and flat k-means never
// computes more than n * k distances per iteration.
std::vector<std::string> counter_violations(const run_options& o, const run_output& r);

int cmd_gen(const gen_options& o, std::ostream& log);
int cmd_run(const run_options& o, std::ostream& log);
// axis: prune, scheduler, cache or threads. Empty variants uses defaults.
int cmd_compare(const run_options& base, const std::string& axis,
                std::vector<std::string> variants, std::ostream& log);

// Full command line entry point; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace mmc::cli

#endif
