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

#include "mmc/engine/executor.hpp"

#include <exception>
#include <mutex>
#include <string>

#include <omp.h>

#include "mmc/core/error.hpp"
#include "mmc/core/mixture.hpp"

namespace mmc {

parallel_executor::parallel_executor(const engine_config& cfg, index_t n)
    : cfg_(cfg),
      threads_(cfg.threads),
      parts_(make_partitions(n, cfg.partition_count())),
      queue_(cfg.scheduler, cfg.partition_count(), cfg.group_count(), cfg.threads) {
    cfg_.validate();
}

std::size_t parallel_executor::task_count(const active_rows& rows) const {
    return make_tasks(parts_, rows, cfg_.task_size).size();
}

void parallel_executor::run(const active_rows& rows, const task_fn& fn) {
    const auto tasks = make_tasks(parts_, rows, cfg_.task_size);
    ++phase_counter_;
    const std::uint64_t shuffle =
        cfg_.task_shuffle_seed == 0 ? 0 : mix_seed(cfg_.task_shuffle_seed, phase_counter_);
    queue_.reset(tasks, shuffle);

    stats_.rows_per_worker.assign(threads_, 0);
    stats_.tasks_per_worker.assign(threads_, 0);
    stats_.tasks = tasks.size();

    std::exception_ptr failure;
    std::mutex failure_mu;
    bool team_short = false;

    const int dyn = omp_get_dynamic();
    omp_set_dynamic(0);
#pragma omp parallel num_threads(static_cast<int>(threads_))
    {
        const auto worker = static_cast<unsigned>(omp_get_thread_num());
        if (static_cast<unsigned>(omp_get_num_threads()) != threads_) {
#pragma omp single
            team_short = true;
        } else {
            try {
                while (auto t = queue_.next(worker)) {
                    fn(*t, worker);
                    stats_.rows_per_worker[worker] += t->count;
                    ++stats_.tasks_per_worker[worker];
                }
            } catch (...) {
                std::lock_guard<std::mutex> g(failure_mu);
                if (!failure) failure = std::current_exception();
                // drain so the other workers finish quickly
                while (queue_.next(worker)) {
                }
            }
        }
    }
    omp_set_dynamic(dyn);
    ++barriers_;
    stats_.steals = queue_.steals();

    if (team_short) {
        throw std::runtime_error("OpenMP granted fewer than " + std::to_string(threads_) +
                                 " threads");
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace mmc
