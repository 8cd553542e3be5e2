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

#ifndef MMC_ALGORITHMS_FCMEANS_HPP
#define MMC_ALGORITHMS_FCMEANS_HPP

#include <optional>
#include <span>
#include <vector>

#include "mmc/algorithms/init.hpp"
#include "mmc/engine/accumulator.hpp"
#include "mmc/engine/mm.hpp"

namespace mmc {

struct fcm_params {
    std::size_t k = 2;
    double fuzziness = 2.0;        // z > 1
    std::size_t block_rows = 64;   // rows per tile in the centroid update
    init_spec init;
    std::optional<centroid_set> initial;
};

/// Memberships of one point given its distances to every centroid. A zero
/// distance makes the point a crisp member of the lowest such centroid.
void fuzzy_memberships(std::span<const double> dist, double fuzziness, std::span<double> out);

/**
 * Fuzzy c-means with separate membership (M1) and centroid (M2) phases.
 * Memberships are stored point-major: membership(i, c) at i * k + c. The
 * objective reported for an iteration is the weighted squared distance of
 * the new memberships to the centroids they were computed from.
 */
class fuzzy_cmeans : public mm_algorithm {
public:
    explicit fuzzy_cmeans(fcm_params p);

    void setup(engine_context& ctx) override;
    unsigned phases() const override { return 2; }
    void begin_iteration(unsigned iter) override;
    void process(unsigned phase, const task& t, const active_rows& rows,
                 unsigned worker) override;
    void reduce(unsigned phase, iteration_metrics& m) override;
    bool converged(const iteration_metrics& m) const override;

    std::size_t aux_bytes() const override;
    const centroid_set& centroids() const override { return cs_; }
    const assignment_vector& assignment() const override { return assign_; }
    std::span<const double> memberships() const { return member_; }

private:
    void update_memberships(const task& t, const active_rows& rows, unsigned worker);
    void accumulate(const task& t, const active_rows& rows, unsigned worker);

    fcm_params p_;
    index_t n_ = 0;
    std::size_t d_ = 0;
    centroid_set cs_;
    assignment_vector assign_;
    std::vector<double> member_;
    fixed_point_codec codec_;
    fixed_point_codec weight_codec_;
    std::vector<centroid_accumulator> num_;
    std::vector<centroid_accumulator> den_;   // k x 1 weight sums
    std::vector<long double> task_obj_;
    std::vector<std::vector<index_t>> ids_;
    std::vector<std::vector<double>> scratch_;
};

struct fcm_result {
    mm_result run;
    std::vector<double> membership;   // n x k, point-major
    std::size_t k = 0;

    double membership_of(index_t i, cluster_t c) const { return membership[i * k + c]; }
};

fcm_result fcmeans(row_source& src, const fcm_params& p, const engine_config& cfg,
                   const iteration_observer& observer = {});
fcm_result fcmeans(const data_matrix& m, const fcm_params& p, const engine_config& cfg,
                   const iteration_observer& observer = {});

}  // namespace mmc

#endif
