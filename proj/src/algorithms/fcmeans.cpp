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

#include "mmc/algorithms/fcmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mmc/core/distance.hpp"
#include "mmc/core/error.hpp"

namespace mmc {

void fuzzy_memberships(std::span<const double> dist, double fuzziness, std::span<double> out) {
    const std::size_t k = dist.size();
    std::size_t arg = 0;
    for (std::size_t c = 1; c < k; ++c) {
        if (dist[c] < dist[arg]) arg = c;
    }
    const double dmin = dist[arg];
    if (dmin == 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
        out[arg] = 1.0;
        return;
    }
    // (dmin / d_c)^(2/(z-1)) lies in (0, 1], so the sum never overflows
    const double power = 2.0 / (fuzziness - 1.0);
    double total = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        out[c] = std::pow(dmin / dist[c], power);
        total += out[c];
    }
    for (std::size_t c = 0; c < k; ++c) out[c] /= total;
}

fuzzy_cmeans::fuzzy_cmeans(fcm_params p) : p_(std::move(p)) {
    if (!(p_.fuzziness > 1.0)) throw usage_error("fuzziness must be greater than 1");
    if (p_.block_rows == 0) throw usage_error("block_rows must be at least 1");
}

void fuzzy_cmeans::setup(engine_context& ctx) {
    ctx_ = &ctx;
    n_ = ctx.rows();
    d_ = ctx.cols();
    if (p_.k == 0 || p_.k > n_) throw usage_error("k must be in [1, n]");
    if (p_.initial) {
        if (p_.initial->k != p_.k || p_.initial->d != d_) throw usage_error("initial centroids do not match k x d");
        cs_ = *p_.initial;
    } else {
        cs_ = init_centroids(ctx.source(), p_.k, p_.init, ctx.threads(), ctx.coordinator_counters());
    }
    cs_.previous = cs_.current;
    assign_.assign(n_, unassigned);
    member_.assign(n_ * p_.k, 0.0);
    codec_ = fixed_point_codec(ctx.source().column_exponents(), n_);
    const int one = 1;
    weight_codec_ = fixed_point_codec(std::span<const int>(&one, 1), n_);
    num_.assign(ctx.threads(), centroid_accumulator(p_.k, d_));
    den_.assign(ctx.threads(), centroid_accumulator(p_.k, 1));
    ids_.assign(ctx.threads(), {});
    scratch_.assign(ctx.threads(), std::vector<double>(p_.k));
}

void fuzzy_cmeans::begin_iteration(unsigned) {
    task_obj_.assign(ctx_->executor().task_count(active_rows::all(n_)), 0.0L);
}

void fuzzy_cmeans::process(unsigned phase, const task& t, const active_rows& rows,
                           unsigned worker) {
    if (phase == 0) {
        update_memberships(t, rows, worker);
    } else {
        accumulate(t, rows, worker);
    }
}

void fuzzy_cmeans::update_memberships(const task& t, const active_rows& rows, unsigned worker) {
    auto& ctr = ctx_->counters(worker);
    auto& ids = ids_[worker];
    ids.clear();
    for (index_t pos = t.begin; pos < t.begin + t.count; ++pos) ids.push_back(rows.row(pos));
    const auto data = ctx_->source().request(ids, worker, ctr);
    auto& dist = scratch_[worker];
    const std::size_t k = p_.k;
    long double obj = 0.0L;
    for (std::size_t r = 0; r < ids.size(); ++r) {
        const index_t i = ids[r];
        for (std::size_t c = 0; c < k; ++c) dist[c] = distance(data[r], cs_.current.data() + c * d_, d_);
        ctr.dist_comps += k;
        std::span<double> u(member_.data() + i * k, k);
        fuzzy_memberships(dist, p_.fuzziness, u);
        cluster_t arg = 0;
        for (std::size_t c = 0; c < k; ++c) {
            obj += std::pow(u[c], p_.fuzziness) * dist[c] * dist[c];
            if (u[c] > u[arg]) arg = static_cast<cluster_t>(c);
        }
        if (assign_[i] != arg) {
            assign_[i] = arg;
            ++ctr.reassigned;
        }
    }
    task_obj_[t.index] = obj;
}

void fuzzy_cmeans::accumulate(const task& t, const active_rows& rows, unsigned worker) {
    auto& ctr = ctx_->counters(worker);
    auto& ids = ids_[worker];
    auto& num = num_[worker];
    auto& den = den_[worker];
    const std::size_t k = p_.k;
    const double unit = 1.0;
    // Tiles of block_rows rows: every centroid sweeps the tile while its
    // rows and memberships are still in cache.
    for (index_t start = t.begin; start < t.begin + t.count; start += p_.block_rows) {
        const index_t stop = std::min<index_t>(start + p_.block_rows, t.begin + t.count);
        ids.clear();
        for (index_t pos = start; pos < stop; ++pos) ids.push_back(rows.row(pos));
        const auto data = ctx_->source().request(ids, worker, ctr);
        for (std::size_t c = 0; c < k; ++c) {
            for (std::size_t r = 0; r < ids.size(); ++r) {
                const double w = std::pow(member_[ids[r] * k + c], p_.fuzziness);
                if (w == 0.0) continue;
                num.add_weighted(static_cast<cluster_t>(c), data[r], w, codec_);
                den.add_weighted(static_cast<cluster_t>(c), &unit, w, weight_codec_);
            }
        }
    }
}

void fuzzy_cmeans::reduce(unsigned phase, iteration_metrics& m) {
    if (phase == 0) {
        long double obj = 0.0L;
        for (long double x : task_obj_) obj += x;
        m.objective = static_cast<double>(obj);
        return;
    }
    cs_.snapshot();
    centroid_sums num(p_.k, d_), den(p_.k, 1);
    for (auto& a : num_) {
        num.merge(a);
        a.clear();
    }
    for (auto& a : den_) {
        den.merge(a);
        a.clear();
    }
    for (std::size_t c = 0; c < p_.k; ++c) {
        const double w = weight_codec_.decode(den.sums()[c], 0);
        if (w <= 0.0) continue;
        for (std::size_t j = 0; j < d_; ++j) {
            cs_.current[c * d_ + j] = codec_.decode(num.sums()[c * d_ + j], j) / w;
        }
    }
    std::fill(cs_.counts.begin(), cs_.counts.end(), 0);
    for (cluster_t a : assign_) ++cs_.counts[a];
    cs_.update_drift();
}

bool fuzzy_cmeans::converged(const iteration_metrics& m) const {
    const auto& cfg = ctx_->config();
    return check_convergence(cs_, m.reassigned, n_, cfg.tol, cfg.convergence);
}

std::size_t fuzzy_cmeans::aux_bytes() const {
    return member_.size() * sizeof(double) + assign_.size() * sizeof(cluster_t) +
           ctx_->threads() * (num_.empty() ? 0 : num_[0].bytes() + den_[0].bytes());
}

fcm_result fcmeans(row_source& src, const fcm_params& p, const engine_config& cfg,
                   const iteration_observer& observer) {
    fuzzy_cmeans alg(p);
    fcm_result out;
    out.run = run_mm(alg, src, cfg, observer);
    out.membership.assign(alg.memberships().begin(), alg.memberships().end());
    out.k = p.k;
    return out;
}

fcm_result fcmeans(const data_matrix& m, const fcm_params& p, const engine_config& cfg,
                   const iteration_observer& observer) {
    memory_source src(m);
    return fcmeans(src, p, cfg, observer);
}

}  // namespace mmc
