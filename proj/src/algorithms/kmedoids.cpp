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

#include "mmc/algorithms/kmedoids.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "mmc/core/distance.hpp"
#include "mmc/core/error.hpp"
#include "mmc/core/mixture.hpp"
#include "mmc/pruning/mti.hpp"

namespace mmc {

double medoid_cost(std::span<const double> points, std::span<const double> medoids,
                   std::size_t d) {
    const std::size_t m = points.size() / d;
    const std::size_t k = medoids.size() / d;
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            best = std::min(best, distance(points.data() + i * d, medoids.data() + c * d, d));
        }
        total += best;
    }
    return total;
}

namespace {

double cost_of(std::span<const double> points, std::size_t d,
               const std::vector<std::size_t>& medoids) {
    std::vector<double> block(medoids.size() * d);
    for (std::size_t c = 0; c < medoids.size(); ++c) {
        std::copy_n(points.data() + medoids[c] * d, d, block.data() + c * d);
    }
    return medoid_cost(points, block, d);
}

}  // namespace

std::vector<std::size_t> swap_search(std::span<const double> points, std::size_t d,
                                     std::vector<std::size_t> medoids) {
    const std::size_t m = points.size() / d;
    const std::size_t k = medoids.size();
    auto dist = [&](std::size_t a, std::size_t b) {
        return distance(points.data() + a * d, points.data() + b * d, d);
    };
    double current = cost_of(points, d, medoids);
    std::vector<double> nearest(m), second(m), to_x(m);
    std::vector<std::size_t> owner(m);
    std::vector<char> is_medoid(m, 0);

    for (;;) {
        std::fill(is_medoid.begin(), is_medoid.end(), 0);
        for (auto md : medoids) is_medoid[md] = 1;
        for (std::size_t o = 0; o < m; ++o) {
            nearest[o] = second[o] = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                const double dc = dist(o, medoids[c]);
                if (dc < nearest[o]) {
                    second[o] = nearest[o];
                    nearest[o] = dc;
                    owner[o] = c;
                } else if (dc < second[o]) {
                    second[o] = dc;
                }
            }
        }
        double best_delta = 0.0;
        std::size_t best_slot = k, best_x = m;
        std::vector<double> delta(k);
        for (std::size_t x = 0; x < m; ++x) {
            if (is_medoid[x]) continue;
            for (std::size_t o = 0; o < m; ++o) to_x[o] = dist(o, x);
            std::fill(delta.begin(), delta.end(), 0.0);
            double shared = 0.0;   // change for points whose medoid stays
            for (std::size_t o = 0; o < m; ++o) {
                if (to_x[o] < nearest[o]) shared += to_x[o] - nearest[o];
            }
            for (std::size_t o = 0; o < m; ++o) {
                // if owner[o] is swapped out, o goes to min(second, x)
                const double gain_if_kept = std::min(to_x[o] - nearest[o], 0.0);
                delta[owner[o]] += std::min(second[o], to_x[o]) - nearest[o] - gain_if_kept;
            }
            for (std::size_t c = 0; c < k; ++c) {
                const double total = shared + delta[c];
                if (total < best_delta) {
                    best_delta = total;
                    best_slot = c;
                    best_x = x;
                }
            }
        }
        if (best_slot == k) break;
        auto trial = medoids;
        trial[best_slot] = best_x;
        const double cost = cost_of(points, d, trial);
        if (!(cost < current)) break;
        medoids = std::move(trial);
        current = cost;
    }
    return medoids;
}

clara_kmedoids::clara_kmedoids(clara_params p) : p_(p) {
    if (!(p_.sample_pct > 0.0 && p_.sample_pct <= 100.0)) {
        throw usage_error("sample_pct must be in (0, 100]");
    }
}

void clara_kmedoids::load_medoids(const std::vector<index_t>& ids) {
    medoids_ = ids;
    for (std::size_t c = 0; c < ids.size(); ++c) {
        const double* row =
            ctx_->source().request_one(ids[c], ctx_->threads(), ctx_->coordinator_counters());
        std::copy_n(row, d_, cs_.current.data() + c * d_);
    }
}

void clara_kmedoids::setup(engine_context& ctx) {
    ctx_ = &ctx;
    n_ = ctx.rows();
    d_ = ctx.cols();
    if (p_.k == 0 || p_.k > n_) throw usage_error("k must be in [1, n]");
    sample_size_ = static_cast<std::size_t>(
        std::ceil(p_.sample_pct * static_cast<double>(n_) / 100.0));
    sample_size_ = std::min<std::size_t>(sample_size_, n_);
    if (sample_size_ < p_.k) {
        throw usage_error("sample of " + std::to_string(sample_size_) + " rows is smaller than k");
    }
    cs_ = centroid_set(p_.k, d_);
    std::mt19937_64 rng(mix_seed(p_.seed, 0x6d65'6400ULL));
    std::vector<index_t> all(n_), pick;
    std::iota(all.begin(), all.end(), index_t{0});
    std::ranges::sample(all, std::back_inserter(pick), static_cast<std::ptrdiff_t>(p_.k), rng);
    load_medoids(pick);
    cs_.previous = cs_.current;
    assign_.assign(n_, unassigned);
    ids_.assign(ctx.threads(), {});
    best_cost_ = std::numeric_limits<double>::infinity();
}

void clara_kmedoids::begin_iteration(unsigned iter) {
    // sample = current medoids + (size - k) other rows
    std::mt19937_64 rng(mix_seed(p_.seed, 0x636c'0000ULL + iter));
    std::vector<char> taken(n_, 0);
    for (auto m : medoids_) taken[m] = 1;
    std::vector<index_t> rest;
    rest.reserve(n_ - p_.k);
    for (index_t i = 0; i < n_; ++i) {
        if (!taken[i]) rest.push_back(i);
    }
    std::vector<index_t> sample;
    std::ranges::sample(rest, std::back_inserter(sample),
                        static_cast<std::ptrdiff_t>(sample_size_ - p_.k), rng);
    sample.insert(sample.end(), medoids_.begin(), medoids_.end());
    std::sort(sample.begin(), sample.end());

    std::vector<double> block(sample.size() * d_);
    for (std::size_t s = 0; s < sample.size(); ++s) {
        const double* row =
            ctx_->source().request_one(sample[s], ctx_->threads(), ctx_->coordinator_counters());
        std::copy_n(row, d_, block.data() + s * d_);
    }
    std::vector<std::size_t> start(p_.k);
    for (std::size_t c = 0; c < p_.k; ++c) {
        start[c] = static_cast<std::size_t>(
            std::lower_bound(sample.begin(), sample.end(), medoids_[c]) - sample.begin());
    }
    const auto found = swap_search(block, d_, start);
    std::vector<index_t> next(p_.k);
    for (std::size_t c = 0; c < p_.k; ++c) next[c] = sample[found[c]];

    cs_.snapshot();
    load_medoids(next);
    task_cost_.assign(ctx_->executor().task_count(active_rows::all(n_)), 0.0L);
}

void clara_kmedoids::process(unsigned, const task& t, const active_rows& rows, unsigned worker) {
    auto& ctr = ctx_->counters(worker);
    auto& ids = ids_[worker];
    ids.clear();
    for (index_t pos = t.begin; pos < t.begin + t.count; ++pos) ids.push_back(rows.row(pos));
    const auto data = ctx_->source().request(ids, worker, ctr);
    long double cost = 0.0L;
    for (std::size_t r = 0; r < ids.size(); ++r) {
        double best = 0.0;
        const cluster_t c = nearest_centroid(data[r], cs_, best, ctr);
        cost += best;
        if (assign_[ids[r]] != c) {
            assign_[ids[r]] = c;
            ++ctr.reassigned;
        }
    }
    task_cost_[t.index] = cost;
}

void clara_kmedoids::reduce(unsigned, iteration_metrics& m) {
    long double cost = 0.0L;
    for (long double x : task_cost_) cost += x;
    std::fill(cs_.counts.begin(), cs_.counts.end(), 0);
    for (cluster_t a : assign_) ++cs_.counts[a];
    cs_.update_drift();
    if (static_cast<double>(cost) < best_cost_) {
        best_cost_ = static_cast<double>(cost);
        best_medoids_ = medoids_;
        best_assign_ = assign_;
        best_cs_ = cs_;
    }
    m.objective = best_cost_;
}

bool clara_kmedoids::converged(const iteration_metrics& m) const {
    const auto& cfg = ctx_->config();
    return check_convergence(cs_, m.reassigned, n_, cfg.tol, cfg.convergence);
}

void clara_kmedoids::finish() {
    if (best_medoids_.empty()) {
        best_medoids_ = medoids_;
        best_cs_ = cs_;
        best_assign_ = assign_;
        return;
    }
    // final cost in row order, independent of the task layout
    double total = 0.0;
    for (index_t i = 0; i < n_; ++i) {
        const double* row = ctx_->source().request_one(i, ctx_->threads(), ctx_->coordinator_counters());
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < p_.k; ++c) {
            best = std::min(best, distance(row, best_cs_.current.data() + c * d_, d_));
        }
        total += best;
    }
    best_cost_ = total;
    cs_ = best_cs_;
    assign_ = best_assign_;
}

std::size_t clara_kmedoids::aux_bytes() const {
    return assign_.size() * sizeof(cluster_t) * 2 + sample_size_ * (d_ + 4) * sizeof(double) +
           medoids_.size() * sizeof(index_t) * 2;
}

clara_result kmedoids_clara(row_source& src, const clara_params& p, const engine_config& cfg,
                            const iteration_observer& observer) {
    clara_kmedoids alg(p);
    clara_result out;
    out.run = run_mm(alg, src, cfg, observer);
    out.medoids = alg.best_medoids();
    out.cost = alg.best_cost();
    return out;
}

clara_result kmedoids_clara(const data_matrix& m, const clara_params& p,
                            const engine_config& cfg, const iteration_observer& observer) {
    memory_source src(m);
    return kmedoids_clara(src, p, cfg, observer);
}

}  // namespace mmc
