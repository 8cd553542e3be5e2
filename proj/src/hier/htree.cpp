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

#include "mmc/hier/htree.hpp"

#include <bit>
#include <string>

#include "mmc/core/error.hpp"

namespace mmc {

void convergence_bitmap::set(node_id id) {
    if (words_.size() <= id / 64) words_.resize(id / 64 + 1, 0);
    words_[id / 64] |= std::uint64_t{1} << (id % 64);
}

bool convergence_bitmap::test(node_id id) const {
    return id / 64 < words_.size() && ((words_[id / 64] >> (id % 64)) & 1U) != 0;
}

std::size_t convergence_bitmap::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

node_id htree::add_root(std::vector<double> centroid, std::uint64_t count) {
    hnode n;
    n.id = peek_next_id();
    n.centroid = std::move(centroid);
    n.count = count;
    nodes_.push_back(std::move(n));
    return nodes_.back().id;
}

node_id htree::peek_next_id() const {
    if (nodes_.size() >= no_parent) throw capacity_error("cluster id space exhausted");
    return static_cast<node_id>(nodes_.size());
}

std::vector<node_id> htree::leaves() const {
    std::vector<node_id> out;
    for (const auto& n : nodes_) {
        if (n.state != node_state::frozen) out.push_back(n.id);
    }
    return out;
}

std::vector<node_id> htree::active_leaves() const {
    std::vector<node_id> out;
    for (const auto& n : nodes_) {
        if (n.state == node_state::active) out.push_back(n.id);
    }
    return out;
}

unsigned htree::depth() const {
    unsigned d = 0;
    for (const auto& n : nodes_) d = std::max(d, n.level);
    return d;
}

void htree::mark_converged(node_id id) {
    auto& n = node(id);
    if (n.state == node_state::frozen) throw usage_error("node " + std::to_string(id) + " is not a leaf");
    n.state = node_state::converged;
    bitmap_.set(id);
}

std::pair<node_id, node_id> spawn_clusters(htree& tree, node_id leaf, std::vector<double> c1,
                                           std::vector<double> c2, std::uint64_t n1,
                                           std::uint64_t n2) {
    hnode& parent = tree.node(leaf);
    if (parent.state != node_state::active) {
        throw usage_error("node " + std::to_string(leaf) + " cannot split");
    }
    if (tree.nodes_.size() + 2 > no_parent) throw capacity_error("cluster id space exhausted");
    const unsigned level = parent.level + 1;
    parent.state = node_state::frozen;
    std::pair<node_id, node_id> ids;
    for (int side = 0; side < 2; ++side) {
        hnode child;
        child.id = static_cast<node_id>(tree.nodes_.size());
        child.parent = leaf;
        child.level = level;
        child.centroid = side == 0 ? std::move(c1) : std::move(c2);
        child.count = side == 0 ? n1 : n2;
        (side == 0 ? ids.first : ids.second) = child.id;
        tree.nodes_.push_back(std::move(child));
    }
    return ids;
}

}  // namespace mmc
