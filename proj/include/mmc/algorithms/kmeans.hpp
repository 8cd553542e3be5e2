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

#ifndef MMC_ALGORITHMS_KMEANS_HPP
#define MMC_ALGORITHMS_KMEANS_HPP

#include <optional>
#include <string_view>
#include <vector>

#include "mmc/algorithms/init.hpp"
#include "mmc/engine/accumulator.hpp"
#include "mmc/engine/mm.hpp"
#include "mmc/pruning/mti.hpp"
#include "mmc/pruning/ti.hpp"

namespace mmc {

enum class prune_mode { none, mti, ti };

std::string_view to_string(prune_mode m);
prune_mode parse_prune_mode(std::string_view s);

struct kmeans_params {
    std::size_t k = 2;
    init_spec init;
    prune_mode prune = prune_mode::mti;
    // Rows are on the unit sphere and centroids are renormalised after
    // every update.
    bool spherical = false;
    // Used instead of `init` when set.
    std::optional<centroid_set> initial;
};

/**
 * Lloyd's algorithm as a single merged MM step: each worker assigns its rows
 * and folds membership changes into its own accumulator; the coordinator
 * merges the deltas into running totals at the barrier.
 *
 * Empty clusters are reseeded with the point farthest from its centroid
 * (lowest row on ties) taken from a cluster that keeps at least one member.
 */
class lloyd_kmeans : public mm_algorithm {
public:
    explicit lloyd_kmeans(kmeans_params p) : p_(std::move(p)) {}

    void setup(engine_context& ctx) override;
    void begin_iteration(unsigned iter) override;
    void process(unsigned phase, const task& t, const active_rows& rows,
                 unsigned worker) override;
    void reduce(unsigned phase, iteration_metrics& m) override;
    bool converged(const iteration_metrics& m) const override;

    std::size_t aux_bytes() const override;
    const centroid_set& centroids() const override { return cs_; }
    const assignment_vector& assignment() const override;

    const std::vector<double>& upper_bounds() const;
    std::uint64_t reseeds() const { return reseeds_; }

private:
    const double* fetch_one(index_t i);
    void reseed(const std::vector<cluster_t>& empty);
    void renormalize(cluster_t c);
    double objective() const;

    kmeans_params p_;
    index_t n_ = 0;
    std::size_t d_ = 0;
    unsigned iter_ = 0;
    centroid_set cs_;
    fixed_point_codec codec_;
    centroid_sums totals_;
    std::vector<centroid_accumulator> accs_;
    mti_state mti_;
    ti_state ti_;
    assignment_vector plain_;
    std::vector<std::vector<index_t>> need_;
    std::vector<long double> task_sq_;
    long double total_sq_ = 0.0L;
    std::uint64_t reseeds_ = 0;
};

mm_result kmeans(row_source& src, const kmeans_params& p, const engine_config& cfg,
                 const iteration_observer& observer = {});
mm_result kmeans(const data_matrix& m, const kmeans_params& p, const engine_config& cfg,
                 const iteration_observer& observer = {});

// Spherical k-means: rows are scaled to unit length on the fly and
// p.spherical is forced on.
mm_result skmeans(row_source& src, kmeans_params p, const engine_config& cfg,
                  const iteration_observer& observer = {});
mm_result skmeans(const data_matrix& m, kmeans_params p, const engine_config& cfg,
                  const iteration_observer& observer = {});

}  // namespace mmc

#endif
