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

#include "mmc/hier/hclust.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "mmc/core/distance.hpp"
#include "mmc/core/error.hpp"
#include "mmc/engine/accumulator.hpp"
#include "mmc/hier/split.hpp"

namespace mmc {

std::string_view to_string(hier_kind k) {
    switch (k) {
        case hier_kind::hmeans: return "hmeans";
        case hier_kind::xmeans: return "xmeans";
        case hier_kind::gmeans: return "gmeans";
    }
    return "?";
}

namespace {

constexpr std::uint8_t no_side = 0xff;

class hier_engine {
public:
    hier_engine(row_source& src, const hier_params& p, const engine_config& cfg)
        : p_(p), ctx_(cfg, src), n_(src.rows()), d_(src.cols()) {}

    hier_result run();

private:
    // Runs fn(row, data, worker, task) over every row of a candidate leaf.
    template <typename Fn>
    void for_candidate_rows(Fn&& fn);

    void leaf_means();
    void farthest_points();
    unsigned inner_two_means();
    void final_pass();
    void decide_and_spawn(iteration_metrics& m);
    void finalize(hier_result& out);

    hier_params p_;
    engine_context ctx_;
    index_t n_;
    std::size_t d_;
    fixed_point_codec codec_;
    htree tree_;
    std::vector<point_key> keys_;
    std::vector<std::uint8_t> side_;
    std::vector<double> proj_;
    std::vector<std::vector<index_t>> ids_;
    std::vector<double> node_sse_;

    // per split step
    std::vector<node_id> cands_;
    std::vector<std::int32_t> slot_of_;
    std::vector<double> mu_;        // S x d
    std::vector<std::uint64_t> count_;
    std::vector<char> distinct_;
    std::vector<double> centers_;   // 2S x d
    std::vector<std::uint64_t> side_count_;   // 2S
    std::vector<double> sse_one_, sse_two_;   // S
    std::uint64_t split_barriers_ = 0;
};

template <typename Fn>
void hier_engine::for_candidate_rows(Fn&& fn) {
    const auto all = active_rows::all(n_);
    ctx_.executor().run(all, [&](const task& t, unsigned worker) {
        auto& ids = ids_[worker];
        ids.clear();
        for (index_t i = t.begin; i < t.begin + t.count; ++i) {
            if (slot_of_[key_leaf(keys_[i])] >= 0) ids.push_back(i);
        }
        if (ids.empty()) return;
        const auto data = ctx_.source().request(ids, worker, ctx_.counters(worker));
        for (std::size_t r = 0; r < ids.size(); ++r) {
            const auto slot = static_cast<std::size_t>(slot_of_[key_leaf(keys_[ids[r]])]);
            fn(ids[r], slot, data[r], worker, t);
        }
    });
}

void hier_engine::leaf_means() {
    const std::size_t S = cands_.size();
    const unsigned T = ctx_.threads();
    std::vector<centroid_accumulator> acc(T, centroid_accumulator(S, d_));
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> lo(T, std::vector<double>(S * d_, inf));
    std::vector<std::vector<double>> hi(T, std::vector<double>(S * d_, -inf));
    for_candidate_rows([&](index_t, std::size_t s, const double* v, unsigned w, const task&) {
        acc[w].add(static_cast<cluster_t>(s), v, codec_);
        for (std::size_t j = 0; j < d_; ++j) {
            lo[w][s * d_ + j] = std::min(lo[w][s * d_ + j], v[j]);
            hi[w][s * d_ + j] = std::max(hi[w][s * d_ + j], v[j]);
        }
    });
    centroid_sums totals(S, d_);
    for (const auto& a : acc) totals.merge(a);
    mu_.assign(S * d_, 0.0);
    count_.assign(S, 0);
    distinct_.assign(S, 0);
    for (std::size_t s = 0; s < S; ++s) {
        count_[s] = static_cast<std::uint64_t>(totals.count(static_cast<cluster_t>(s)));
        if (count_[s] > 0) totals.mean(static_cast<cluster_t>(s), codec_, mu_.data() + s * d_);
        for (std::size_t j = 0; j < d_ && !distinct_[s]; ++j) {
            double mn = inf, mx = -inf;
            for (unsigned w = 0; w < T; ++w) {
                mn = std::min(mn, lo[w][s * d_ + j]);
                mx = std::max(mx, hi[w][s * d_ + j]);
            }
            distinct_[s] = count_[s] > 1 && mn < mx;
        }
    }
}

void hier_engine::farthest_points() {
    const std::size_t S = cands_.size();
    const unsigned T = ctx_.threads();
    std::vector<std::vector<std::pair<double, index_t>>> best(
        T, std::vector<std::pair<double, index_t>>(S, {-1.0, n_}));
    for_candidate_rows([&](index_t i, std::size_t s, const double* v, unsigned w, const task&) {
        const double dist = distance(v, mu_.data() + s * d_, d_);
        ++ctx_.counters(w).dist_comps;
        auto& b = best[w][s];
        if (dist > b.first || (dist == b.first && i < b.second)) b = {dist, i};
    });
    centers_.assign(2 * S * d_, 0.0);
    for (std::size_t s = 0; s < S; ++s) {
        std::pair<double, index_t> b{-1.0, n_};
        for (unsigned w = 0; w < T; ++w) {
            const auto& c = best[w][s];
            if (c.first > b.first || (c.first == b.first && c.second < b.second)) b = c;
        }
        const double* mu = mu_.data() + s * d_;
        double* c1 = centers_.data() + 2 * s * d_;
        double* c2 = c1 + d_;
        if (b.second == n_) {
            std::copy_n(mu, d_, c1);
            std::copy_n(mu, d_, c2);
            continue;
        }
        const double* f = ctx_.source().request_one(b.second, ctx_.threads(), ctx_.coordinator_counters());
        for (std::size_t j = 0; j < d_; ++j) {
            const double half = 0.5 * (f[j] - mu[j]);
            c1[j] = mu[j] + half;
            c2[j] = mu[j] - half;
        }
    }
}

unsigned hier_engine::inner_two_means() {
    const std::size_t S = cands_.size();
    const unsigned T = ctx_.threads();
    std::fill(side_.begin(), side_.end(), no_side);
    unsigned rounds = 0;
    for (unsigned it = 0; it < p_.inner_iters; ++it) {
        std::vector<centroid_accumulator> acc(T, centroid_accumulator(2 * S, d_));
        for_candidate_rows([&](index_t i, std::size_t s, const double* v, unsigned w, const task&) {
            const double* c1 = centers_.data() + 2 * s * d_;
            const double d1 = distance(v, c1, d_);
            const double d2 = distance(v, c1 + d_, d_);
            auto& ctr = ctx_.counters(w);
            ctr.dist_comps += 2;
            const std::uint8_t side = d2 < d1 ? 1 : 0;
            if (side != side_[i]) {
                side_[i] = side;
                ++ctr.reassigned;
            }
            acc[w].add(static_cast<cluster_t>(2 * s + side), v, codec_);
        });
        ++rounds;
        centroid_sums totals(2 * S, d_);
        for (const auto& a : acc) totals.merge(a);
        double moved = 0.0;
        std::vector<double> mean(d_);
        for (std::size_t c = 0; c < 2 * S; ++c) {
            if (totals.count(static_cast<cluster_t>(c)) == 0) continue;
            totals.mean(static_cast<cluster_t>(c), codec_, mean.data());
            moved = std::max(moved, distance(mean.data(), centers_.data() + c * d_, d_));
            std::copy(mean.begin(), mean.end(), centers_.begin() + static_cast<std::ptrdiff_t>(c * d_));
        }
        if (moved == 0.0) break;
    }
    return rounds;
}

void hier_engine::final_pass() {
    const std::size_t S = cands_.size();
    const unsigned T = ctx_.threads();
    const std::size_t tasks = ctx_.executor().task_count(active_rows::all(n_));
    std::vector<long double> part(tasks * S * 2, 0.0L);   // [task][slot][one, two]
    std::vector<std::vector<std::uint64_t>> cnt(T, std::vector<std::uint64_t>(2 * S, 0));
    std::vector<double> w(S * d_);
    for (std::size_t s = 0; s < S; ++s) {
        for (std::size_t j = 0; j < d_; ++j) {
            w[s * d_ + j] = centers_[2 * s * d_ + j] - centers_[(2 * s + 1) * d_ + j];
        }
    }
    const bool project = p_.kind == hier_kind::gmeans;
    for_candidate_rows([&](index_t i, std::size_t s, const double* v, unsigned wk, const task& t) {
        const double* c1 = centers_.data() + 2 * s * d_;
        const double d1 = squared_distance(v, c1, d_);
        const double d2 = squared_distance(v, c1 + d_, d_);
        const std::uint8_t side = d2 < d1 ? 1 : 0;
        side_[i] = side;
        ++cnt[wk][2 * s + side];
        part[(t.index * S + s) * 2] += squared_distance(v, mu_.data() + s * d_, d_);
        part[(t.index * S + s) * 2 + 1] += side ? d2 : d1;
        ctx_.counters(wk).dist_comps += 3;
        if (project) proj_[i] = dot(v, w.data() + s * d_, d_);
    });
    side_count_.assign(2 * S, 0);
    for (const auto& c : cnt) {
        for (std::size_t x = 0; x < 2 * S; ++x) side_count_[x] += c[x];
    }
    sse_one_.assign(S, 0.0);
    sse_two_.assign(S, 0.0);
    for (std::size_t s = 0; s < S; ++s) {
        long double one = 0.0L, two = 0.0L;
        for (std::size_t t = 0; t < tasks; ++t) {
            one += part[(t * S + s) * 2];
            two += part[(t * S + s) * 2 + 1];
        }
        sse_one_[s] = static_cast<double>(one);
        sse_two_[s] = static_cast<double>(two);
    }
}

void hier_engine::decide_and_spawn(iteration_metrics& m) {
    const std::size_t S = cands_.size();
    std::vector<std::vector<double>> leaf_proj;
    if (p_.kind == hier_kind::gmeans) {
        leaf_proj.resize(S);
        for (index_t i = 0; i < n_; ++i) {
            const auto s = slot_of_[key_leaf(keys_[i])];
            if (s >= 0) leaf_proj[static_cast<std::size_t>(s)].push_back(proj_[i]);
        }
    }
    std::size_t leaves = tree_.leaves().size();
    // child ids per slot; no_parent when the leaf did not split
    std::vector<std::pair<node_id, node_id>> kids(S, {no_parent, no_parent});
    double objective = 0.0;
    for (std::size_t s = 0; s < S; ++s) {
        const node_id id = cands_[s];
        const std::uint64_t n1 = side_count_[2 * s], n2 = side_count_[2 * s + 1];
        const bool viable = distinct_[s] && n1 > 0 && n2 > 0;
        bool split = false;
        switch (p_.kind) {
            case hier_kind::hmeans:
                split = viable && split_decision_hmeans(tree_.node(id).level, p_.lmax, distinct_[s]);
                break;
            case hier_kind::xmeans:
                split = viable && split_decision_xmeans({{count_[s]}, sse_one_[s], d_},
                                                        {{n1, n2}, sse_two_[s], d_});
                break;
            case hier_kind::gmeans:
                split = viable && anderson_darling_decision(leaf_proj[s], p_.alpha);
                break;
        }
        if (split && p_.kind != hier_kind::hmeans && leaves + 1 > p_.kmax) split = false;
        hnode& leaf = tree_.node(id);
        leaf.count = count_[s];
        leaf.centroid.assign(mu_.begin() + static_cast<std::ptrdiff_t>(s * d_),
                             mu_.begin() + static_cast<std::ptrdiff_t>((s + 1) * d_));
        if (!split) {
            tree_.mark_converged(id);
            node_sse_[id] = sse_one_[s];
            objective += sse_one_[s];
            continue;
        }
        const double* c1 = centers_.data() + 2 * s * d_;
        kids[s] = spawn_clusters(tree_, id, {c1, c1 + d_}, {c1 + d_, c1 + 2 * d_}, n1, n2);
        node_sse_.resize(tree_.size(), 0.0);
        node_sse_[id] = sse_one_[s];
        objective += sse_two_[s];
        ++leaves;
    }
    for (node_id id : tree_.leaves()) {
        if (id < slot_of_.size() && slot_of_[id] < 0 &&
            tree_.node(id).state == node_state::converged) {
            objective += node_sse_[id];
        }
    }
    m.objective = objective;

    bool any = std::any_of(kids.begin(), kids.end(), [](const auto& k) { return k.first != no_parent; });
    if (!any) return;
    // metadata-only pass: rewrite the leaf bits of every moved point
    ctx_.executor().run(active_rows::all(n_), [&](const task& t, unsigned) {
        for (index_t i = t.begin; i < t.begin + t.count; ++i) {
            const auto s = slot_of_[key_leaf(keys_[i])];
            if (s < 0) continue;
            const auto& k = kids[static_cast<std::size_t>(s)];
            if (k.first == no_parent) continue;
            keys_[i] = make_key(side_[i] ? k.second : k.first, key_row(keys_[i]));
        }
    });
    ++split_barriers_;
}

void hier_engine::finalize(hier_result& out) {
    out.leaf_ids = tree_.leaves();
    std::vector<std::int32_t> dense(tree_.size(), -1);
    for (std::size_t c = 0; c < out.leaf_ids.size(); ++c) dense[out.leaf_ids[c]] = static_cast<std::int32_t>(c);
    const std::size_t K = out.leaf_ids.size();
    out.assign.assign(n_, 0);
    for (index_t i = 0; i < n_; ++i) out.assign[i] = static_cast<cluster_t>(dense[key_leaf(keys_[i])]);

    // exact leaf means
    const unsigned T = ctx_.threads();
    std::vector<centroid_accumulator> acc(T, centroid_accumulator(K, d_));
    ctx_.executor().run(active_rows::all(n_), [&](const task& t, unsigned w) {
        auto& ids = ids_[w];
        ids.clear();
        for (index_t i = t.begin; i < t.begin + t.count; ++i) ids.push_back(i);
        const auto data = ctx_.source().request(ids, w, ctx_.counters(w));
        for (std::size_t r = 0; r < ids.size(); ++r) acc[w].add(out.assign[ids[r]], data[r], codec_);
    });
    centroid_sums totals(K, d_);
    for (const auto& a : acc) totals.merge(a);
    out.centroids = centroid_set(K, d_);
    totals.write_means(codec_, out.centroids);
    out.centroids.previous = out.centroids.current;
    for (std::size_t c = 0; c < K; ++c) {
        auto& node = tree_.node(out.leaf_ids[c]);
        node.count = out.centroids.counts[c];
        node.centroid.assign(out.centroids.row(c).begin(), out.centroids.row(c).end());
    }
}

hier_result hier_engine::run() {
    ctx_.source().bind(ctx_.executor().partitions(), ctx_.threads());
    codec_ = fixed_point_codec(ctx_.source().column_exponents(), n_);
    keys_.resize(n_);
    for (index_t i = 0; i < n_; ++i) keys_[i] = make_key(0, i);
    side_.assign(n_, no_side);
    if (p_.kind == hier_kind::gmeans) proj_.assign(n_, 0.0);
    ids_.assign(ctx_.threads(), {});
    tree_ = htree(d_);
    tree_.add_root(std::vector<double>(d_, 0.0), n_);
    node_sse_.assign(1, 0.0);

    hier_result out;
    using clock = std::chrono::steady_clock;
    for (unsigned round = 1;; ++round) {
        cands_.clear();
        for (node_id id : tree_.active_leaves()) {
            const bool capped = p_.kind == hier_kind::hmeans ? tree_.node(id).level >= p_.lmax
                                                             : tree_.leaves().size() >= p_.kmax;
            if (capped) {
                tree_.mark_converged(id);
            } else {
                cands_.push_back(id);
            }
        }
        if (cands_.empty()) break;
        const auto t0 = clock::now();
        ctx_.source().begin_iteration(round);
        slot_of_.assign(tree_.size(), -1);
        for (std::size_t s = 0; s < cands_.size(); ++s) slot_of_[cands_[s]] = static_cast<std::int32_t>(s);
        node_sse_.resize(tree_.size(), 0.0);

        iteration_metrics m;
        m.iter = round;
        leaf_means();
        farthest_points();
        inner_two_means();
        final_pass();
        decide_and_spawn(m);
        ctx_.source().end_iteration(round);
        m.absorb(ctx_.collect_counters());
        m.aux_bytes = keys_.size() * sizeof(point_key) + side_.size() + proj_.size() * sizeof(double) +
                      tree_.size() * (sizeof(hnode) + d_ * sizeof(double));
        m.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        out.metrics.push_back(m);
        out.rounds = round;
    }
    finalize(out);
    out.tree = std::move(tree_);
    out.keys = std::move(keys_);
    out.barriers = ctx_.executor().barriers();
    out.split_barriers = split_barriers_;
    return out;
}

}  // namespace

hier_result run_hierarchical(row_source& src, const hier_params& p, const engine_config& cfg) {
    cfg.validate();
    if (p.kind == hier_kind::hmeans && p.lmax < 1) throw usage_error("level cap must be at least 1");
    if (p.kind != hier_kind::hmeans && p.kmax < 1) throw usage_error("kmax must be at least 1");
    if (p.inner_iters < 1) throw usage_error("inner iteration cap must be at least 1");
    if (p.kind == hier_kind::gmeans) anderson_darling_critical(p.alpha);
    if (src.rows() > 0xffffffffULL) throw capacity_error("row ids must fit in 32 bits");
    hier_engine eng(src, p, cfg);
    return eng.run();
}

hier_result run_hierarchical(const data_matrix& m, const hier_params& p, const engine_config& cfg) {
    memory_source src(m);
    return run_hierarchical(src, p, cfg);
}

}  // namespace mmc
