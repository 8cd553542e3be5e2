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

#ifndef MMC_HIER_HCLUST_HPP
#define MMC_HIER_HCLUST_HPP

#include <string_view>
#include <vector>

#include "mmc/engine/mm.hpp"
#include "mmc/hier/htree.hpp"

namespace mmc {

enum class hier_kind { hmeans, xmeans, gmeans };

std::string_view to_string(hier_kind k);

struct hier_params {
    hier_kind kind = hier_kind::xmeans;
    std::size_t kmax = 32;       // leaf cap for xmeans / gmeans
    unsigned lmax = 4;           // level cap for hmeans
    double alpha = 0.0001;       // gmeans significance
    unsigned inner_iters = 20;   // 2-means rounds per split step
};

struct hier_result {
    htree tree;
    std::vector<point_key> keys;
    assignment_vector assign;     // dense leaf index, leaves in ascending id
    std::vector<node_id> leaf_ids;
    centroid_set centroids;       // mean of each final leaf
    std::vector<iteration_metrics> metrics;   // one row per split step
    unsigned rounds = 0;
    std::uint64_t barriers = 0;
    std::uint64_t split_barriers = 0;
};

/**
 * Divisive clustering without recursion. Every split step runs 2-means inside
 * all active leaves at once over contiguous row blocks, then decides each
 * leaf's split serially in ascending id order and rewrites the leaf bits of
 * the point keys in one parallel pass. Rows never move.
 *
 * Child seeds sit half way between the leaf mean and its farthest member,
 * on either side of the mean.
 */
hier_result run_hierarchical(row_source& src, const hier_params& p, const engine_config& cfg);
hier_result run_hierarchical(const data_matrix& m, const hier_params& p, const engine_config& cfg);

}  // namespace mmc

#endif
