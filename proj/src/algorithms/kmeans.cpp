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

#include "mmc/algorithms/kmeans.hpp"

#include <cmath>
#include <limits>

#include "mmc/core/distance.hpp"
#include "mmc/core/error.hpp"

namespace mmc {

std::string_view to_string(prune_mode m) {
    switch (m) {
        case prune_mode::none: return "none";
        case prune_mode::mti: return "mti";
        case prune_mode::ti: return "ti";
    }
    return "?";
}

prune_mode parse_prune_mode(std::string_view s) {
    if (s == "none") return prune_mode::none;
    if (s == "mti") return prune_mode::mti;
    if (s == "ti") return prune_mode::ti;
    throw usage_error("unknown prune mode '" + std::string(s) + "' (expected none, mti or ti)");
}

void lloyd_kmeans::setup(engine_context& ctx) {
    ctx_ = &ctx;
    n_ = ctx.rows();
    d_ = ctx.cols();
    const std::size_t k = p_.k;
    if (k == 0) throw usage_error("k must be at least 1");
    if (k > n_) throw usage_error("k = " + std::to_string(k) + " exceeds n = " + std::to_string(n_));

    if (p_.initial) {
        if (p_.initial->k != k || p_.initial->d != d_) {
            throw usage_error("initial centroids do not match k x d");
        }
        cs_ = *p_.initial;
    } else {
        cs_ = init_centroids(ctx.source(), k, p_.init, ctx.threads(), ctx.coordinator_counters());
    }
    if (p_.spherical) {
        for (std::size_t c = 0; c < k; ++c) {
            auto r = cs_.row(c);
            const double norm = std::sqrt(dot(r.data(), r.data(), d_));
            if (norm == 0.0) throw domain_error("initial centroid has zero norm");
            for (auto& x : r) x /= norm;
        }
    }
    cs_.previous = cs_.current;
    std::fill(cs_.drift.begin(), cs_.drift.end(), 0.0);
    std::fill(cs_.counts.begin(), cs_.counts.end(), 0);

    codec_ = fixed_point_codec(ctx.source().column_exponents(), n_);
    totals_ = centroid_sums(k, d_);
    accs_.assign(ctx.threads(), centroid_accumulator(k, d_));
    need_.assign(ctx.threads(), {});
    switch (p_.prune) {
        case prune_mode::mti:
            mti_ = mti_state(n_, k);
            update_centroid_geometry(cs_, mti_.geo);
            break;
        case prune_mode::ti:
            ti_ = ti_state(n_, k);
            update_centroid_geometry(cs_, ti_.geo);
            break;
        case prune_mode::none:
            plain_.assign(n_, unassigned);
            break;
    }
    iter_ = 0;
    total_sq_ = 0.0L;
}

void lloyd_kmeans::begin_iteration(unsigned iter) {
    iter_ = iter;
    if (iter == 1) task_sq_.assign(ctx_->executor().task_count(active_rows::all(n_)), 0.0L);
}

void lloyd_kmeans::process(unsigned, const task& t, const active_rows& rows, unsigned worker) {
    auto& ctr = ctx_->counters(worker);
    auto& acc = accs_[worker];
    auto& need = need_[worker];
    need.clear();
    const std::span<const double> drift(cs_.drift);

    for (index_t pos = t.begin; pos < t.begin + t.count; ++pos) {
        const index_t i = rows.row(pos);
        if (p_.prune == prune_mode::mti) {
            mti_.inflate(i, drift);
            if (mti_.clause1(i)) {
                ++ctr.prune_c1;
                continue;
            }
        } else if (p_.prune == prune_mode::ti) {
            ti_.inflate(i, drift);
            if (ti_.clause1(i)) {
                ++ctr.prune_c1;
                continue;
            }
        }
        need.push_back(i);
    }
    if (need.empty()) return;

    const auto data = ctx_->source().request(need, worker, ctr);
    long double sq = 0.0L;
    for (std::size_t r = 0; r < need.size(); ++r) {
        const index_t i = need[r];
        const double* v = data[r];
        point_outcome out;
        switch (p_.prune) {
            case prune_mode::mti: out = refine_point_mti(v, i, mti_, cs_, ctr); break;
            case prune_mode::ti: out = refine_point_ti(v, i, ti_, cs_, ctr); break;
            case prune_mode::none: {
                double best = 0.0;
                out.previous = plain_[i];
                out.cluster = plain_[i] = nearest_centroid(v, cs_, best, ctr);
                break;
            }
        }
        if (iter_ == 1) sq += dot(v, v, d_);
        if (out.changed()) {
            if (out.previous != unassigned) acc.remove(out.previous, v, codec_);
            acc.add(out.cluster, v, codec_);
            ++ctr.reassigned;
        }
    }
    if (iter_ == 1) task_sq_[t.index] = sq;
}

const double* lloyd_kmeans::fetch_one(index_t i) {
    return ctx_->source().request_one(i, ctx_->threads(), ctx_->coordinator_counters());
}

void lloyd_kmeans::renormalize(cluster_t c) {
    auto r = cs_.row(c);
    const double norm = std::sqrt(dot(r.data(), r.data(), d_));
    if (norm == 0.0) {
        std::copy(cs_.previous.begin() + c * d_, cs_.previous.begin() + (c + 1) * d_, r.begin());
        return;
    }
    for (auto& x : r) x /= norm;
}

void lloyd_kmeans::reseed(const std::vector<cluster_t>& empty) {
    assignment_vector& assign = const_cast<assignment_vector&>(assignment());
    // Distance of every row to its (updated) centroid.
    std::vector<double> far(n_, 0.0);
    const auto all = active_rows::all(n_);
    ctx_->executor().run(all, [&](const task& t, unsigned worker) {
        auto& ids = need_[worker];
        ids.clear();
        for (index_t pos = t.begin; pos < t.begin + t.count; ++pos) ids.push_back(pos);
        const auto data = ctx_->source().request(ids, worker, ctx_->counters(worker));
        for (std::size_t r = 0; r < ids.size(); ++r) {
            far[ids[r]] = distance(data[r], cs_.current.data() + assign[ids[r]] * d_, d_);
        }
    });

    std::vector<char> moved(n_, 0);
    for (cluster_t e : empty) {
        index_t pick = n_;
        double best = -1.0;
        for (index_t i = 0; i < n_; ++i) {
            if (moved[i] || totals_.count(assign[i]) <= 1) continue;
            if (far[i] > best) {
                best = far[i];
                pick = i;
            }
        }
        if (pick == n_) break;   // k <= n makes this unreachable
        moved[pick] = 1;
        const cluster_t from = assign[pick];
        const double* v = fetch_one(pick);
        totals_.add(from, v, codec_, -1);
        totals_.add(e, v, codec_, +1);
        assign[pick] = e;
        if (p_.prune == prune_mode::mti) {
            mti_.u[pick] = std::numeric_limits<double>::infinity();
        } else if (p_.prune == prune_mode::ti) {
            ti_.u[pick] = std::numeric_limits<double>::infinity();
            std::fill_n(ti_.lower_row(pick), p_.k, 0.0);
        }
        for (cluster_t c : {from, e}) {
            totals_.mean(c, codec_, cs_.current.data() + c * d_);
            cs_.counts[c] = static_cast<std::uint64_t>(totals_.count(c));
            if (p_.spherical) renormalize(c);
        }
        ++reseeds_;
    }
}

double lloyd_kmeans::objective() const {
    // sum ||v - c||^2 = sum ||v||^2 - 2 S_c . c + n_c ||c||^2 per cluster
    long double total = total_sq_;
    std::vector<double> s(d_);
    for (std::size_t c = 0; c < p_.k; ++c) {
        const auto nc = totals_.count(static_cast<cluster_t>(c));
        if (nc == 0) continue;
        totals_.mean(static_cast<cluster_t>(c), codec_, s.data());
        const double* cen = cs_.current.data() + c * d_;
        long double cross = 0.0L, cc = 0.0L;
        for (std::size_t j = 0; j < d_; ++j) {
            cross += static_cast<long double>(s[j]) * cen[j];
            cc += static_cast<long double>(cen[j]) * cen[j];
        }
        total += nc * (cc - 2.0L * cross);
    }
    return static_cast<double>(std::max(0.0L, total));
}

void lloyd_kmeans::reduce(unsigned, iteration_metrics& m) {
    if (iter_ == 1) {
        total_sq_ = 0.0L;
        for (long double x : task_sq_) total_sq_ += x;
    }
    const auto empty = reduce_accumulators(accs_, totals_, codec_, cs_);
    for (auto& a : accs_) a.clear();
    if (p_.spherical) {
        for (std::size_t c = 0; c < p_.k; ++c) {
            if (totals_.count(static_cast<cluster_t>(c)) > 0) renormalize(static_cast<cluster_t>(c));
        }
    }
    if (!empty.empty()) reseed(empty);
    cs_.update_drift();
    if (p_.prune == prune_mode::mti) update_centroid_geometry(cs_, mti_.geo);
    if (p_.prune == prune_mode::ti) update_centroid_geometry(cs_, ti_.geo);
    m.objective = objective();
}

bool lloyd_kmeans::converged(const iteration_metrics& m) const {
    const auto& cfg = ctx_->config();
    return check_convergence(cs_, m.reassigned, n_, cfg.tol, cfg.convergence);
}

std::size_t lloyd_kmeans::aux_bytes() const {
    switch (p_.prune) {
        case prune_mode::mti: return mti_.aux_bytes(ctx_->threads(), d_);
        case prune_mode::ti: return ti_.aux_bytes(ctx_->threads(), d_);
        case prune_mode::none: break;
    }
    return plain_.size() * sizeof(cluster_t) +
           ctx_->threads() * (p_.k * d_ * sizeof(std::int64_t) + p_.k * sizeof(std::int32_t));
}

const assignment_vector& lloyd_kmeans::assignment() const {
    switch (p_.prune) {
        case prune_mode::mti: return mti_.assign;
        case prune_mode::ti: return ti_.assign;
        case prune_mode::none: break;
    }
    return plain_;
}

const std::vector<double>& lloyd_kmeans::upper_bounds() const {
    return p_.prune == prune_mode::ti ? ti_.u : mti_.u;
}

mm_result kmeans(row_source& src, const kmeans_params& p, const engine_config& cfg,
                 const iteration_observer& observer) {
    lloyd_kmeans alg(p);
    return run_mm(alg, src, cfg, observer);
}

mm_result kmeans(const data_matrix& m, const kmeans_params& p, const engine_config& cfg,
                 const iteration_observer& observer) {
    memory_source src(m);
    return kmeans(src, p, cfg, observer);
}

mm_result skmeans(row_source& src, kmeans_params p, const engine_config& cfg,
                  const iteration_observer& observer) {
    p.spherical = true;
    normalized_source unit(src);
    return kmeans(unit, p, cfg, observer);
}

mm_result skmeans(const data_matrix& m, kmeans_params p, const engine_config& cfg,
                  const iteration_observer& observer) {
    memory_source src(m);
    return skmeans(src, std::move(p), cfg, observer);
}

}  // namespace mmc
