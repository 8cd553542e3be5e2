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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mmc/core/error.hpp"
#include "mmc/hier/hclust.hpp"
#include "mmc/hier/htree.hpp"
#include "mmc/hier/split.hpp"
#include "serial_ref.hpp"
#include "test_util.hpp"

namespace mmc {
namespace {

// Spherical Gaussian log-likelihood at the MLE, written out directly.
double bic_oracle(const std::vector<std::vector<double>>& groups) {
    double R = 0.0, sse = 0.0;
    for (const auto& g : groups) {
        R += static_cast<double>(g.size());
        double mean = 0.0;
        for (double x : g) mean += x;
        mean /= static_cast<double>(g.size());
        for (double x : g) sse += (x - mean) * (x - mean);
    }
    const double var = sse / R;
    double ll = 0.0;
    for (const auto& g : groups) {
        const double n = static_cast<double>(g.size());
        ll += n * std::log(n / R) - n / 2.0 * std::log(2.0 * std::numbers::pi * var);
    }
    ll -= R / 2.0;
    const double K = static_cast<double>(groups.size());
    return ll - (K - 1.0 + K + 1.0) / 2.0 * std::log(R);
}

gaussian_fit fit_of(const std::vector<std::vector<double>>& groups) {
    gaussian_fit f;
    f.dims = 1;
    for (const auto& g : groups) {
        f.sizes.push_back(g.size());
        double mean = 0.0;
        for (double x : g) mean += x;
        mean /= static_cast<double>(g.size());
        for (double x : g) f.sse += (x - mean) * (x - mean);
    }
    return f;
}

// Inverse of the standard normal CDF by bisection.
double probit(double p) {
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (0.5 * std::erfc(-mid / std::numbers::sqrt2) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

TEST(Tree, SpawnHandsOutTheNextIds) {
    htree t(1);
    t.add_root({0.0}, 10);
    auto [a, b] = spawn_clusters(t, 0, {-1.0}, {1.0}, 4, 6);
    EXPECT_EQ(a, 1u);
    EXPECT_EQ(b, 2u);
    spawn_clusters(t, 1, {-2.0}, {-0.5}, 1, 3);
    auto [c, d] = spawn_clusters(t, 3, {-3.0}, {-1.5}, 0, 1);
    EXPECT_EQ(c, 5u);
    EXPECT_EQ(d, 6u);
    EXPECT_EQ(t.node(3).state, node_state::frozen);
    EXPECT_EQ(t.node(5).parent, 3u);
    EXPECT_EQ(t.node(5).level, 3u);
    EXPECT_EQ(t.leaves(), (std::vector<node_id>{2, 4, 5, 6}));
    EXPECT_THROW(spawn_clusters(t, 3, {0.0}, {0.0}), usage_error);
    t.mark_converged(2);
    EXPECT_TRUE(t.converged().test(2));
    EXPECT_EQ(t.active_leaves(), (std::vector<node_id>{4, 5, 6}));
}

TEST(Tree, KeysRoundTrip) {
    for (index_t row : {0ull, 1ull, 123456ull, 0xffffffffull}) {
        for (node_id leaf : {0u, 7u, 0xfffffffeu}) {
            const auto k = make_key(leaf, row);
            EXPECT_EQ(key_row(k), row);
            EXPECT_EQ(key_leaf(k), leaf);
        }
    }
}

TEST(Bic, MatchesClosedForm) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> a(50), b(50);
    for (auto& x : a) x = z(rng);
    for (auto& x : b) x = 30.0 + z(rng);
    std::vector<double> both(a);
    both.insert(both.end(), b.begin(), b.end());
    EXPECT_NEAR(bic_score(fit_of({a, b})), bic_oracle({a, b}), 1e-9);
    EXPECT_NEAR(bic_score(fit_of({both})), bic_oracle({both}), 1e-9);
    EXPECT_TRUE(split_decision_xmeans(fit_of({both}), fit_of({a, b})));
}

TEST(Bic, SingleGaussianRarelySplits) {
    int kept = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> z(0.0, 0.1);
        data_matrix m(100, 1, [&] {
            std::vector<double> v(100);
            for (auto& x : v) x = z(rng);
            return v;
        }());
        double lo = m.row(0)[0], hi = lo;
        for (index_t i = 0; i < 100; ++i) {
            lo = std::min(lo, m.row(i)[0]);
            hi = std::max(hi, m.row(i)[0]);
        }
        const auto tr = ref::lloyd(m, {lo, hi}, 2, 30);
        std::vector<std::vector<double>> two(2);
        std::vector<double> one;
        for (index_t i = 0; i < 100; ++i) {
            two[tr.assign.back()[i]].push_back(m.row(i)[0]);
            one.push_back(m.row(i)[0]);
        }
        if (!split_decision_xmeans(fit_of({one}), fit_of(two))) ++kept;
    }
    EXPECT_GE(kept, 9);
}

TEST(Bic, DegenerateFits) {
    EXPECT_TRUE(std::isinf(bic_score({{10}, 0.0, 3})));
    EXPECT_FALSE(split_decision_xmeans({{10}, 0.0, 3}, {{5, 5}, 0.0, 3}));
    EXPECT_FALSE(split_decision_xmeans({{10}, 4.0, 3}, {{10, 0}, 1.0, 3}));
}

TEST(AndersonDarling, CriticalValues) {
    EXPECT_EQ(anderson_darling_critical(0.0001), 1.8692);
    EXPECT_EQ(anderson_darling_critical(0.05), 0.752);
    EXPECT_THROW(anderson_darling_critical(0.2), usage_error);
}

TEST(AndersonDarling, NormalCdf) {
    EXPECT_EQ(normal_cdf(0.0), 0.5);
    EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-15);
    EXPECT_NEAR(normal_cdf(-3.0), 0.0013498980316301, 1e-15);
}

TEST(AndersonDarling, BimodalSampleSplits) {
    std::vector<double> x(40);
    for (std::size_t i = 0; i < 40; ++i) x[i] = i % 2 ? 1.0 : -1.0;
    EXPECT_GT(anderson_darling_statistic(x), 1.8692);
    EXPECT_TRUE(anderson_darling_decision(x, 0.0001));
}

TEST(AndersonDarling, PlottingPositionsDoNotSplit) {
    std::vector<double> x(20);
    for (std::size_t j = 1; j <= 20; ++j) x[j - 1] = probit((static_cast<double>(j) - 0.5) / 20.0);
    const double stat = anderson_darling_statistic(x);
    EXPECT_LT(stat, 0.631);
    EXPECT_FALSE(anderson_darling_decision(x, 0.0001));
}

TEST(AndersonDarling, SmallOrFlatSamplesDecline) {
    EXPECT_FALSE(anderson_darling_decision(std::vector<double>{-1, 1, -1, 1, -1, 1, -1}, 0.0001));
    EXPECT_FALSE(anderson_darling_decision(std::vector<double>(50, 2.0), 0.0001));
    const std::vector<double> pts{0, 1, 2, 3};
    const std::vector<double> same{1.0};
    EXPECT_FALSE(anderson_darling_decision(pts, 1, same, same, 0.0001));
}

TEST(HMeans, LevelCap) {
    EXPECT_FALSE(split_decision_hmeans(2, 2, true));
    EXPECT_FALSE(split_decision_hmeans(0, 2, false));
    EXPECT_TRUE(split_decision_hmeans(1, 2, true));
    const auto mx = test::blobs(500, 3, 5, 10.0, 1);
    hier_params p;
    p.kind = hier_kind::hmeans;
    p.lmax = 1;
    const auto r = run_hierarchical(mx.data, p, {});
    EXPECT_EQ(r.leaf_ids.size(), 2u);
    EXPECT_EQ(r.split_barriers, 1u);
}

TEST(HMeans, TwoDistinctPointsBecomeSingletons) {
    const data_matrix m(2, 2, {0, 0, 1, 1});
    hier_params p;
    p.kind = hier_kind::hmeans;
    p.lmax = 3;
    const auto r = run_hierarchical(m, p, {});
    EXPECT_EQ(r.leaf_ids.size(), 2u);
    EXPECT_NE(r.assign[0], r.assign[1]);
}

TEST(Hierarchical, IdenticalPointsStayOneLeaf) {
    const data_matrix m(50, 2, std::vector<double>(100, 3.0));
    for (auto kind : {hier_kind::hmeans, hier_kind::xmeans, hier_kind::gmeans}) {
        hier_params p;
        p.kind = kind;
        const auto r = run_hierarchical(m, p, {});
        EXPECT_EQ(r.leaf_ids.size(), 1u) << to_string(kind);
    }
}

TEST(Hierarchical, SinglePointStaysOneLeaf) {
    const data_matrix m(1, 2, {1, 2});
    const auto r = run_hierarchical(m, {}, {});
    EXPECT_EQ(r.leaf_ids.size(), 1u);
}

class FindsTheBlobs : public ::testing::TestWithParam<hier_kind> {};

TEST_P(FindsTheBlobs, EightSeparatedBlobs) {
    const auto mx = test::blobs(8000, 8, 8, 20.0, 3);
    hier_params p;
    p.kind = GetParam();
    p.kmax = 32;
    engine_config cfg;
    cfg.threads = 2;
    const auto r = run_hierarchical(mx.data, p, cfg);
    EXPECT_EQ(r.leaf_ids.size(), 8u);
    // every leaf is one true blob
    std::vector<int> owner(r.leaf_ids.size(), -1);
    for (index_t i = 0; i < mx.data.rows(); ++i) {
        auto& o = owner[r.assign[i]];
        if (o < 0) o = static_cast<int>(mx.labels[i]);
        EXPECT_EQ(o, static_cast<int>(mx.labels[i]));
    }
}

INSTANTIATE_TEST_SUITE_P(Kinds, FindsTheBlobs, ::testing::Values(hier_kind::xmeans, hier_kind::gmeans));

TEST(Hierarchical, KeysCountsAndCentroidsAreConsistent) {
    const auto mx = test::blobs(3000, 4, 6, 12.0, 5);
    hier_params p;
    p.kind = hier_kind::xmeans;
    const auto r = run_hierarchical(mx.data, p, {});
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < r.leaf_ids.size(); ++c) total += r.centroids.counts[c];
    EXPECT_EQ(total, 3000u);
    for (index_t i = 0; i < 3000; ++i) {
        EXPECT_EQ(key_row(r.keys[i]), i);
        EXPECT_EQ(key_leaf(r.keys[i]), r.leaf_ids[r.assign[i]]);
    }
    // children's counts add up to the parent's
    for (const auto& n : r.tree.nodes()) {
        if (n.state != node_state::frozen) continue;
        std::uint64_t kids = 0;
        for (const auto& c : r.tree.nodes()) {
            if (c.parent == n.id) kids += c.count;
        }
        EXPECT_EQ(kids, n.count) << "node " << n.id;
    }
    EXPECT_LE(r.leaf_ids.size(), p.kmax);
}

TEST(Hierarchical, LeafCapIsRespected) {
    const auto mx = test::blobs(3000, 4, 12, 20.0, 5);
    hier_params p;
    p.kind = hier_kind::gmeans;
    p.kmax = 5;
    const auto r = run_hierarchical(mx.data, p, {});
    EXPECT_EQ(r.leaf_ids.size(), 5u);
}

TEST(Hierarchical, ThreadCountDoesNotChangeTheTree) {
    const auto mx = test::blobs(4000, 4, 6, 6.0, 8);
    for (auto kind : {hier_kind::hmeans, hier_kind::xmeans, hier_kind::gmeans}) {
        hier_params p;
        p.kind = kind;
        p.lmax = 3;
        engine_config cfg;
        cfg.task_size = 64;
        const auto a = run_hierarchical(mx.data, p, cfg);
        cfg.threads = 4;
        cfg.scheduler = sched_mode::fifo;
        const auto b = run_hierarchical(mx.data, p, cfg);
        EXPECT_EQ(a.keys, b.keys) << to_string(kind);
        EXPECT_EQ(a.centroids.current, b.centroids.current) << to_string(kind);
    }
}

TEST(Hierarchical, RejectsBadParameters) {
    const data_matrix m(4, 1, {0, 1, 2, 3});
    hier_params p;
    p.kind = hier_kind::gmeans;
    p.alpha = 0.3;
    EXPECT_THROW(run_hierarchical(m, p, {}), usage_error);
    p.kind = hier_kind::xmeans;
    p.kmax = 0;
    EXPECT_THROW(run_hierarchical(m, p, {}), usage_error);
}

}  // namespace
}  // namespace mmc
