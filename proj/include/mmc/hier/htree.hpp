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

#ifndef MMC_HIER_HTREE_HPP
#define MMC_HIER_HTREE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "mmc/core/types.hpp"

namespace mmc {

using node_id = std::uint32_t;
inline constexpr node_id no_parent = UINT32_MAX;

// Leaf id in the high 32 bits, row in the low 32 bits.
using point_key = std::uint64_t;

constexpr point_key make_key(node_id leaf, index_t row) {
    return (static_cast<point_key>(leaf) << 32) | (row & 0xffffffffULL);
}
constexpr node_id key_leaf(point_key k) { return static_cast<node_id>(k >> 32); }
constexpr index_t key_row(point_key k) { return k & 0xffffffffULL; }

enum class node_state : std::uint8_t {
    active,      // may still split
    converged,   // final leaf
    frozen       // split; no longer a leaf
};

struct hnode {
    node_id id = 0;
    node_id parent = no_parent;
    unsigned level = 0;
    node_state state = node_state::active;
    std::uint64_t count = 0;
    std::vector<double> centroid;
};

// One bit per node id; a set bit is never cleared.
class convergence_bitmap {
public:
    void set(node_id id);
    bool test(node_id id) const;
    std::size_t count() const;

private:
    std::vector<std::uint64_t> words_;
};

/// Binary forest of clusters. Node ids are dense and handed out in order.
class htree {
public:
    htree() = default;
    explicit htree(std::size_t d) : d_(d) {}

    node_id add_root(std::vector<double> centroid, std::uint64_t count);
    std::size_t size() const { return nodes_.size(); }
    std::size_t dims() const { return d_; }
    const hnode& node(node_id id) const { return nodes_.at(id); }
    hnode& node(node_id id) { return nodes_.at(id); }
    const std::vector<hnode>& nodes() const { return nodes_; }

    // Leaves (active or converged) in ascending id order.
    std::vector<node_id> leaves() const;
    std::vector<node_id> active_leaves() const;
    unsigned depth() const;

    void mark_converged(node_id id);
    const convergence_bitmap& converged() const { return bitmap_; }

    // Id the next spawn would hand out; throws capacity_error if none left.
    node_id peek_next_id() const;

private:
    friend std::pair<node_id, node_id> spawn_clusters(htree&, node_id, std::vector<double>,
                                                      std::vector<double>, std::uint64_t,
                                                      std::uint64_t);
    std::size_t d_ = 0;
    std::vector<hnode> nodes_;
    convergence_bitmap bitmap_;
};

/// Freezes `leaf` and allocates its two children with the given centroids
/// and member counts. Touches metadata only; keys are rewritten by the caller.
std::pair<node_id, node_id> spawn_clusters(htree& tree, node_id leaf, std::vector<double> c1,
                                           std::vector<double> c2, std::uint64_t n1 = 0,
                                           std::uint64_t n2 = 0);

}  // namespace mmc

#endif
