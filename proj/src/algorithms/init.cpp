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

#include "mmc/algorithms/init.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "mmc/core/distance.hpp"
#include "mmc/core/error.hpp"
#include "mmc/core/mixture.hpp"

namespace mmc {

std::string_view to_string(init_method m) {
    switch (m) {
        case init_method::random_assign: return "random";
        case init_method::forgy: return "forgy";
        case init_method::plusplus: return "plusplus";
    }
    return "?";
}

init_method parse_init_method(std::string_view s) {
    if (s == "random" || s == "random_assign") return init_method::random_assign;
    if (s == "forgy") return init_method::forgy;
    if (s == "plusplus" || s == "kmeans++") return init_method::plusplus;
    throw usage_error("unknown init method '" + std::string(s) +
                      "' (expected random, forgy or plusplus)");
}

std::vector<double> plusplus_probabilities(std::span<const double> d2) {
    long double total = 0.0L;
    for (double x : d2) total += x;
    std::vector<double> p(d2.size(), 0.0);
    if (total <= 0.0L) return p;
    for (std::size_t i = 0; i < d2.size(); ++i) p[i] = static_cast<double>(d2[i] / total);
    return p;
}

namespace {

void copy_row(centroid_set& cs, std::size_t c, const double* row) {
    std::copy(row, row + cs.d, cs.current.begin() + static_cast<std::ptrdiff_t>(c * cs.d));
}

centroid_set init_random_assign(row_source& src, std::size_t k, std::mt19937_64& rng,
                                unsigned worker, worker_counters& io) {
    const index_t n = src.rows();
    const std::size_t d = src.cols();
    // a shuffled round-robin keeps every cluster non-empty
    std::vector<index_t> perm(n);
    std::iota(perm.begin(), perm.end(), index_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<cluster_t> label(n);
    for (index_t pos = 0; pos < n; ++pos) label[perm[pos]] = static_cast<cluster_t>(pos % k);

    std::vector<long double> sums(k * d, 0.0L);
    centroid_set cs(k, d);
    for (index_t i = 0; i < n; ++i) {
        const double* row = src.request_one(i, worker, io);
        for (std::size_t j = 0; j < d; ++j) sums[label[i] * d + j] += row[j];
        ++cs.counts[label[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t j = 0; j < d; ++j) {
            cs.current[c * d + j] = static_cast<double>(sums[c * d + j] / cs.counts[c]);
        }
    }
    return cs;
}

centroid_set init_forgy(row_source& src, std::size_t k, std::mt19937_64& rng, unsigned worker,
                        worker_counters& io) {
    std::vector<index_t> all(src.rows());
    std::iota(all.begin(), all.end(), index_t{0});
    std::vector<index_t> pick;
    pick.reserve(k);
    std::ranges::sample(all, std::back_inserter(pick), static_cast<std::ptrdiff_t>(k), rng);
    centroid_set cs(k, src.cols());
    for (std::size_t c = 0; c < k; ++c) copy_row(cs, c, src.request_one(pick[c], worker, io));
    return cs;
}

centroid_set init_plusplus(row_source& src, std::size_t k, std::mt19937_64& rng,
                           unsigned worker, worker_counters& io) {
    const index_t n = src.rows();
    const std::size_t d = src.cols();
    centroid_set cs(k, d);
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    std::vector<char> chosen(n, 0);

    index_t next = std::uniform_int_distribution<index_t>(0, n - 1)(rng);
    for (std::size_t c = 0; c < k; ++c) {
        chosen[next] = 1;
        copy_row(cs, c, src.request_one(next, worker, io));
        if (c + 1 == k) break;
        const double* cen = cs.current.data() + c * d;
        long double total = 0.0L;
        for (index_t i = 0; i < n; ++i) {
            const double dd = squared_distance(src.request_one(i, worker, io), cen, d);
            if (dd < d2[i]) d2[i] = dd;
            total += d2[i];
        }
        if (total <= 0.0L) {
            next = static_cast<index_t>(std::find(chosen.begin(), chosen.end(), 0) - chosen.begin());
            continue;
        }
        const long double target = std::uniform_real_distribution<double>(0.0, 1.0)(rng) * total;
        long double run = 0.0L;
        next = n;
        for (index_t i = 0; i < n; ++i) {
            if (d2[i] <= 0.0) continue;
            run += d2[i];
            next = i;
            if (run > target) break;
        }
    }
    return cs;
}

}  // namespace

centroid_set init_centroids(row_source& src, std::size_t k, const init_spec& spec,
                            unsigned worker, worker_counters& io) {
    if (k == 0) throw usage_error("k must be at least 1");
    if (k > src.rows()) {
        throw usage_error("k = " + std::to_string(k) + " exceeds n = " + std::to_string(src.rows()));
    }
    std::mt19937_64 rng(mix_seed(spec.seed, 0x696e6974));
    switch (spec.method) {
        case init_method::random_assign: return init_random_assign(src, k, rng, worker, io);
        case init_method::forgy: return init_forgy(src, k, rng, worker, io);
        case init_method::plusplus: return init_plusplus(src, k, rng, worker, io);
    }
    throw usage_error("bad init method");
}

centroid_set init_centroids(const data_matrix& m, std::size_t k, const init_spec& spec) {
    memory_source src(m);
    worker_counters io;
    return init_centroids(src, k, spec, 0, io);
}

}  // namespace mmc
