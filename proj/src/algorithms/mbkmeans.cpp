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

#include "mmc/algorithms/mbkmeans.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <numeric>

#include "mmc/core/distance.hpp"
#include "mmc/core/error.hpp"
#include "mmc/core/mixture.hpp"
#include "mmc/pruning/mti.hpp"

namespace mmc {

index_t batch_size(index_t n, double batch_frac) {
    if (!(batch_frac > 0.0 && batch_frac <= 1.0)) {
        throw usage_error("batch fraction must be in (0, 1]");
    }
    const auto b = static_cast<index_t>(std::ceil(batch_frac * static_cast<double>(n)));
    return std::clamp<index_t>(b, 1, n);
}

std::vector<index_t> draw_batch(index_t n, index_t size, std::uint64_t seed, unsigned iter) {
    std::mt19937_64 rng(mix_seed(seed, 0x6d62'0000ULL + iter));
    std::vector<index_t> all(n), out;
    std::iota(all.begin(), all.end(), index_t{0});
    out.reserve(size);
    std::ranges::sample(all, std::back_inserter(out),
                        static_cast<std::ptrdiff_t>(size), rng);
    return out;
}

void gradient_step(double* centroid, const double* v, std::size_t d, std::uint64_t count) {
    const double eta = 1.0 / static_cast<double>(count);
    for (std::size_t j = 0; j < d; ++j) centroid[j] = (1.0 - eta) * centroid[j] + eta * v[j];
}

minibatch_kmeans::minibatch_kmeans(minibatch_params p) : p_(std::move(p)) {
    batch_size(1, p_.batch_frac);   // validates the fraction
}

void minibatch_kmeans::setup(engine_context& ctx) {
    ctx_ = &ctx;
    n_ = ctx.rows();
    d_ = ctx.cols();
    if (p_.k == 0 || p_.k > n_) throw usage_error("k must be in [1, n]");
    seed_ = ctx.config().seed;
    if (p_.initial) {
        if (p_.initial->k != p_.k || p_.initial->d != d_) throw usage_error("initial centroids do not match k x d");
        cs_ = *p_.initial;
    } else {
        cs_ = init_centroids(ctx.source(), p_.k, p_.init, ctx.threads(), ctx.coordinator_counters());
    }
    cs_.previous = cs_.current;
    assign_.assign(n_, unassigned);
    seen_.assign(p_.k, 0);
}

void minibatch_kmeans::begin_iteration(unsigned iter) {
    batch_ = draw_batch(n_, batch_size(n_, p_.batch_frac), seed_, iter);
    label_.assign(batch_.size(), 0);
    best_sq_.assign(batch_.size(), 0.0);
    rows_.resize(batch_.size() * d_);
}

active_rows minibatch_kmeans::rows_for(unsigned, unsigned) {
    return active_rows::list(batch_);
}

void minibatch_kmeans::process(unsigned, const task& t, const active_rows& rows, unsigned worker) {
    auto& ctr = ctx_->counters(worker);
    const auto ids = rows.ids().subspan(t.begin, t.count);
    const auto data = ctx_->source().request(ids, worker, ctr);
    for (std::size_t r = 0; r < ids.size(); ++r) {
        const index_t pos = t.begin + r;
        double best = 0.0;
        label_[pos] = nearest_centroid(data[r], cs_, best, ctr);
        best_sq_[pos] = best * best;
        std::copy(data[r], data[r] + d_, rows_.begin() + static_cast<std::ptrdiff_t>(pos * d_));
        if (assign_[batch_[pos]] != label_[pos]) {
            assign_[batch_[pos]] = label_[pos];
            ++ctr.reassigned;
        }
    }
}

void minibatch_kmeans::reduce(unsigned, iteration_metrics& m) {
    cs_.snapshot();
    long double obj = 0.0L;
    for (std::size_t pos = 0; pos < batch_.size(); ++pos) {
        const cluster_t c = label_[pos];
        gradient_step(cs_.current.data() + c * d_, rows_.data() + pos * d_, d_, ++seen_[c]);
        obj += best_sq_[pos];
    }
    for (std::size_t c = 0; c < p_.k; ++c) cs_.counts[c] = seen_[c];
    cs_.update_drift();
    m.objective = static_cast<double>(obj);
}

bool minibatch_kmeans::converged(const iteration_metrics& m) const {
    const auto& cfg = ctx_->config();
    if (cfg.convergence == converge_mode::fraction) {
        // only the batch can move, so measure against the batch size
        return static_cast<double>(m.reassigned) <= cfg.tol * static_cast<double>(batch_.size());
    }
    return check_convergence(cs_, m.reassigned, n_, cfg.tol, cfg.convergence);
}

void minibatch_kmeans::finish() {
    const auto all = active_rows::all(n_);
    std::vector<std::vector<index_t>> ids(ctx_->threads());
    ctx_->executor().run(all, [&](const task& t, unsigned worker) {
        auto& mine = ids[worker];
        mine.clear();
        for (index_t pos = t.begin; pos < t.begin + t.count; ++pos) mine.push_back(pos);
        auto& ctr = ctx_->counters(worker);
        const auto data = ctx_->source().request(mine, worker, ctr);
        for (std::size_t r = 0; r < mine.size(); ++r) {
            double best = 0.0;
            assign_[mine[r]] = nearest_centroid(data[r], cs_, best, ctr);
        }
    });
    std::fill(cs_.counts.begin(), cs_.counts.end(), 0);
    for (cluster_t a : assign_) ++cs_.counts[a];
}

std::size_t minibatch_kmeans::aux_bytes() const {
    return assign_.size() * sizeof(cluster_t) + seen_.size() * sizeof(std::uint64_t) +
           batch_.size() * (sizeof(index_t) + sizeof(cluster_t) + sizeof(double)) +
           rows_.size() * sizeof(double);
}

mm_result mbkmeans(row_source& src, const minibatch_params& p, const engine_config& cfg,
                   const iteration_observer& observer) {
    minibatch_kmeans alg(p);
    return run_mm(alg, src, cfg, observer);
}

mm_result mbkmeans(const data_matrix& m, const minibatch_params& p, const engine_config& cfg,
                   const iteration_observer& observer) {
    memory_source src(m);
    return mbkmeans(src, p, cfg, observer);
}

}  // namespace mmc
