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

#include "mmc/engine/mm.hpp"

#include <chrono>

namespace mmc {

engine_context::engine_context(const engine_config& cfg, row_source& src)
    : cfg_(cfg), src_(&src), exec_(cfg, src.rows()), counters_(cfg.threads + 1) {}

worker_counters engine_context::collect_counters() {
    worker_counters total;
    for (auto& c : counters_) {
        total.merge(c);
        c = worker_counters{};
    }
    return total;
}

active_rows mm_algorithm::rows_for(unsigned, unsigned) {
    return active_rows::all(ctx_->rows());
}

mm_result run_mm(mm_algorithm& alg, row_source& src, const engine_config& cfg,
                 const iteration_observer& observer) {
    cfg.validate();
    engine_context ctx(cfg, src);
    src.bind(ctx.executor().partitions(), ctx.threads());
    alg.setup(ctx);
    ctx.collect_counters();   // setup I/O is not part of any iteration

    mm_result res;
    using clock = std::chrono::steady_clock;
    for (unsigned iter = 1; iter <= cfg.max_iters; ++iter) {
        const auto t0 = clock::now();
        src.begin_iteration(iter);
        alg.begin_iteration(iter);
        iteration_metrics m;
        m.iter = iter;
        for (unsigned phase = 0; phase < alg.phases(); ++phase) {
            const active_rows rows = alg.rows_for(phase, iter);
            ctx.executor().run(rows, [&](const task& t, unsigned worker) {
                alg.process(phase, t, rows, worker);
            });
            alg.reduce(phase, m);
        }
        src.end_iteration(iter);
        m.absorb(ctx.collect_counters());
        m.aux_bytes = alg.aux_bytes();
        m.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        res.metrics.push_back(m);
        res.iterations = iter;
        if (observer) {
            observer(iteration_view{iter, alg.centroids(), alg.assignment(), res.metrics.back()});
        }
        if (alg.converged(m)) {
            res.converged = true;
            break;
        }
    }
    alg.finish();
    res.centroids = alg.centroids();
    res.assign = alg.assignment();
    res.barriers = ctx.executor().barriers();
    return res;
}

}  // namespace mmc
