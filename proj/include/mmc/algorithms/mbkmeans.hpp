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

#ifndef MMC_ALGORITHMS_MBKMEANS_HPP
#define MMC_ALGORITHMS_MBKMEANS_HPP

#include <optional>
#include <vector>

#include "mmc/algorithms/init.hpp"
#include "mmc/engine/mm.hpp"

namespace mmc {

struct minibatch_params {
    std::size_t k = 2;
    double batch_frac = 0.2;
    init_spec init;
    std::optional<centroid_set> initial;
};

// Number of rows drawn per iteration: ceil(batch_frac * n).
index_t batch_size(index_t n, double batch_frac);

// Sorted sample of batch rows for iteration `iter`; depends only on
// (seed, iter, n, size).
std::vector<index_t> draw_batch(index_t n, index_t size, std::uint64_t seed, unsigned iter);

// c <- (1 - eta) c + eta v with eta = 1 / count.
void gradient_step(double* centroid, const double* v, std::size_t d, std::uint64_t count);

/**
 * Mini-batch k-means. Every iteration assigns a fresh sample in parallel,
 * then applies per-point updates in sample order at the barrier with a
 * learning rate of one over the centroid's cumulative assignment count.
 * A final full assignment pass labels every row.
 */
class minibatch_kmeans : public mm_algorithm {
public:
    explicit minibatch_kmeans(minibatch_params p);

    void setup(engine_context& ctx) override;
    void begin_iteration(unsigned iter) override;
    active_rows rows_for(unsigned phase, unsigned iter) override;
    void process(unsigned phase, const task& t, const active_rows& rows,
                 unsigned worker) override;
    void reduce(unsigned phase, iteration_metrics& m) override;
    bool converged(const iteration_metrics& m) const override;
    void finish() override;

    std::size_t aux_bytes() const override;
    const centroid_set& centroids() const override { return cs_; }
    const assignment_vector& assignment() const override { return assign_; }
    const std::vector<std::uint64_t>& cumulative_counts() const { return seen_; }

private:
    minibatch_params p_;
    index_t n_ = 0;
    std::size_t d_ = 0;
    std::uint64_t seed_ = 0;
    centroid_set cs_;
    assignment_vector assign_;
    std::vector<std::uint64_t> seen_;
    std::vector<index_t> batch_;
    std::vector<cluster_t> label_;
    std::vector<double> best_sq_;
    std::vector<double> rows_;
};

mm_result mbkmeans(row_source& src, const minibatch_params& p, const engine_config& cfg,
                   const iteration_observer& observer = {});
mm_result mbkmeans(const data_matrix& m, const minibatch_params& p, const engine_config& cfg,
                   const iteration_observer& observer = {});

}  // namespace mmc

#endif
