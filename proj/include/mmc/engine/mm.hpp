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

#ifndef MMC_ENGINE_MM_HPP
#define MMC_ENGINE_MM_HPP

#include <functional>
#include <memory>
#include <vector>

#include "mmc/engine/config.hpp"
#include "mmc/engine/executor.hpp"
#include "mmc/engine/metrics.hpp"
#include "mmc/engine/row_source.hpp"

namespace mmc {

// Everything an algorithm sees during one run.
class engine_context {
public:
    engine_context(const engine_config& cfg, row_source& src);

    const engine_config& config() const { return cfg_; }
    row_source& source() { return *src_; }
    parallel_executor& executor() { return exec_; }
    unsigned threads() const { return exec_.threads(); }
    index_t rows() const { return src_->rows(); }
    std::size_t cols() const { return src_->cols(); }

    worker_counters& counters(unsigned worker) { return counters_[worker]; }
    // Slot used by serial code running on the coordinator.
    worker_counters& coordinator_counters() { return counters_.back(); }
    worker_counters collect_counters();   // merges (ascending worker) and resets

private:
    engine_config cfg_;
    row_source* src_;
    parallel_executor exec_;
    std::vector<worker_counters> counters_;
};

/**
 * A Majorize-Minimization algorithm driven by run_mm. An iteration is one or
 * more parallel phases; phases() == 1 is the merged MM step (one barrier per
 * iteration), phases() == 2 runs M1 and M2 separately. Every phase ends with
 * a serial reduce() on the coordinator.
 */
class mm_algorithm {
public:
    virtual ~mm_algorithm() = default;

    virtual void setup(engine_context& ctx) = 0;
    virtual unsigned phases() const { return 1; }
    virtual void begin_iteration(unsigned /*iter*/) {}
    virtual active_rows rows_for(unsigned phase, unsigned iter);
    virtual void process(unsigned phase, const task& t, const active_rows& rows,
                         unsigned worker) = 0;
    virtual void reduce(unsigned phase, iteration_metrics& m) = 0;
    virtual bool converged(const iteration_metrics& m) const = 0;
    virtual void finish() {}

    // Auxiliary bytes: algorithm state beyond the data matrix and the model.
    virtual std::size_t aux_bytes() const = 0;
    virtual const centroid_set& centroids() const = 0;
    virtual const assignment_vector& assignment() const = 0;

protected:
    engine_context* ctx_ = nullptr;
};

struct iteration_view {
    unsigned iter;
    const centroid_set& centroids;
    const assignment_vector& assign;
    const iteration_metrics& metrics;
};

using iteration_observer = std::function<void(const iteration_view&)>;

struct mm_result {
    centroid_set centroids;
    assignment_vector assign;
    std::vector<iteration_metrics> metrics;
    unsigned iterations = 0;
    bool converged = false;
    std::uint64_t barriers = 0;
};

mm_result run_mm(mm_algorithm& alg, row_source& src, const engine_config& cfg,
                 const iteration_observer& observer = {});

}  // namespace mmc

#endif
