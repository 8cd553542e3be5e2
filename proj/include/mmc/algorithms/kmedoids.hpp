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

#ifndef MMC_ALGORITHMS_KMEDOIDS_HPP
#define MMC_ALGORITHMS_KMEDOIDS_HPP

#include <vector>

#include "mmc/engine/mm.hpp"

namespace mmc {

struct clara_params {
    std::size_t k = 2;
    double sample_pct = 10.0;   // (0, 100]
    std::uint64_t seed = 1;
};

// Sum of Euclidean distances from each listed point to its nearest medoid.
// `points` and `medoids` are row-major blocks of dimension d.
double medoid_cost(std::span<const double> points, std::span<const double> medoids,
                   std::size_t d);

/// Best-improvement swap search on a point set, starting from `medoids`
/// (positions into the set). A swap is taken only when it strictly lowers the
/// total cost; stops when no swap does. Returns the final positions.
std::vector<std::size_t> swap_search(std::span<const double> points, std::size_t d,
                                     std::vector<std::size_t> medoids);

/**
 * CLARA k-medoids. Each iteration draws a sample that always contains the
 * current medoids, improves the medoids by swap search on the sample, then
 * assigns every row to its nearest medoid in parallel. The medoid set with
 * the lowest full-data cost seen so far is kept.
 */
class clara_kmedoids : public mm_algorithm {
public:
    explicit clara_kmedoids(clara_params p);

    void setup(engine_context& ctx) override;
    void begin_iteration(unsigned iter) override;
    void process(unsigned phase, const task& t, const active_rows& rows,
                 unsigned worker) override;
    void reduce(unsigned phase, iteration_metrics& m) override;
    bool converged(const iteration_metrics& m) const override;
    void finish() override;

    std::size_t aux_bytes() const override;
    const centroid_set& centroids() const override { return cs_; }
    const assignment_vector& assignment() const override { return assign_; }

    const std::vector<index_t>& best_medoids() const { return best_medoids_; }
    double best_cost() const { return best_cost_; }

private:
    void load_medoids(const std::vector<index_t>& ids);

    clara_params p_;
    index_t n_ = 0;
    std::size_t d_ = 0;
    std::size_t sample_size_ = 0;
    centroid_set cs_;
    std::vector<index_t> medoids_;
    assignment_vector assign_;
    std::vector<long double> task_cost_;
    std::vector<std::vector<index_t>> ids_;

    std::vector<index_t> best_medoids_;
    assignment_vector best_assign_;
    centroid_set best_cs_;
    double best_cost_ = 0.0;
};

struct clara_result {
    mm_result run;
    std::vector<index_t> medoids;   // row ids, in cluster order
    double cost = 0.0;              // full-data cost of `medoids`
};

clara_result kmedoids_clara(row_source& src, const clara_params& p, const engine_config& cfg,
                            const iteration_observer& observer = {});
clara_result kmedoids_clara(const data_matrix& m, const clara_params& p,
                            const engine_config& cfg, const iteration_observer& observer = {});

}  // namespace mmc

#endif
