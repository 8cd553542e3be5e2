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

#include <algorithm>
#include <atomic>
#include <random>

#include "mmc/algorithms/kmeans.hpp"
#include "mmc/core/error.hpp"
#include "mmc/engine/accumulator.hpp"
#include "mmc/engine/config.hpp"
#include "mmc/engine/executor.hpp"
#include "mmc/engine/fixed_point.hpp"
#include "mmc/engine/mm.hpp"
#include "mmc/engine/task_queue.hpp"
#include "test_util.hpp"

namespace mmc {
namespace {

TEST(Convergence, FractionMode) {
    centroid_set cs(1, 1);
    EXPECT_TRUE(check_convergence(cs, 0, 100, 0.0, converge_mode::fraction));
    EXPECT_TRUE(check_convergence(cs, 0, 100, 0.5, converge_mode::fraction));
    EXPECT_FALSE(check_convergence(cs, 1, 100, 0.0, converge_mode::fraction));
    EXPECT_TRUE(check_convergence(cs, 1, 100, 0.01, converge_mode::fraction));
    EXPECT_FALSE(check_convergence(cs, 0, 100, 0.0, converge_mode::iterations));
}

TEST(Convergence, DriftMode) {
    centroid_set cs(2, 1);
    cs.drift = {0.0, 0.25};
    EXPECT_FALSE(check_convergence(cs, 0, 10, 0.2, converge_mode::drift));
    EXPECT_TRUE(check_convergence(cs, 5, 10, 0.25, converge_mode::drift));
}

TEST(Config, ParsesAndValidates) {
    EXPECT_EQ(parse_sched_mode("static"), sched_mode::fixed);
    EXPECT_EQ(parse_sched_mode("steal"), sched_mode::steal);
    EXPECT_EQ(parse_sched_mode("fifo"), sched_mode::fifo);
    EXPECT_THROW(parse_sched_mode("round-robin"), usage_error);
    engine_config c;
    c.threads = 0;
    EXPECT_THROW(c.validate(), usage_error);
    c.threads = 2;
    c.tol = -1;
    EXPECT_THROW(c.validate(), usage_error);
}

TEST(Tasks, NeverCrossPartitions) {
    const auto parts = make_partitions(103, 4);
    const auto tasks = make_tasks(parts, active_rows::all(103), 10);
    index_t covered = 0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto& t = tasks[i];
        EXPECT_EQ(t.index, i);
        const auto& p = parts[t.home_partition];
        EXPECT_GE(t.begin, p.start);
        EXPECT_LE(t.begin + t.count, p.start + p.count);
        EXPECT_LE(t.count, 10u);
        covered += t.count;
    }
    EXPECT_EQ(covered, 103u);

    const std::vector<index_t> ids{0, 5, 30, 31, 60, 99};
    const auto sub = make_tasks(parts, active_rows::list(ids), 1000);
    index_t pos = 0;
    for (const auto& t : sub) {
        EXPECT_EQ(t.begin, pos);
        pos += t.count;
    }
    EXPECT_EQ(pos, ids.size());
    const std::vector<index_t> bad{5, 3};
    EXPECT_THROW(make_tasks(parts, active_rows::list(bad), 10), usage_error);
}

TEST(TaskQueue, HomeFirstThenSteal) {
    task_queue q(sched_mode::steal, 2, 1, 2);
    q.reset({{0, 1, 0, 0}, {1, 1, 1, 1}, {2, 1, 1, 2}});
    auto t = q.next(0);
    ASSERT_TRUE(t);
    EXPECT_EQ(t->home_partition, 0u);
    EXPECT_EQ(q.steals(), 0u);
    t = q.next(0);   // home empty, steal from partition 1
    ASSERT_TRUE(t);
    EXPECT_EQ(t->home_partition, 1u);
    EXPECT_EQ(q.steals(), 1u);
    t = q.next(1);
    ASSERT_TRUE(t);
    EXPECT_FALSE(q.next(0));
    EXPECT_FALSE(q.next(1));
}

TEST(TaskQueue, StealOrderPrefersOwnGroup) {
    task_queue q(sched_mode::steal, 4, 2, 4);
    EXPECT_EQ(q.group_of(0), q.group_of(1));
    EXPECT_NE(q.group_of(1), q.group_of(2));
    const auto& order = q.steal_order(0);
    ASSERT_EQ(order.size(), 3u);
    EXPECT_EQ(order[0], 1u);
}

TEST(TaskQueue, StaticNeverSteals) {
    task_queue q(sched_mode::fixed, 2, 1, 2);
    q.reset({{0, 1, 0, 0}, {1, 1, 1, 1}});
    ASSERT_TRUE(q.next(0));
    EXPECT_FALSE(q.next(0));
    ASSERT_TRUE(q.next(1));
}

class ExecutorCoverage : public ::testing::TestWithParam<std::tuple<sched_mode, unsigned>> {};

TEST_P(ExecutorCoverage, EveryRowExactlyOnce) {
    engine_config cfg;
    cfg.scheduler = std::get<0>(GetParam());
    cfg.threads = std::get<1>(GetParam());
    cfg.task_size = 7;
    cfg.task_shuffle_seed = 3;
    parallel_executor ex(cfg, 1000);
    std::vector<std::atomic<int>> hits(1000);
    ex.run(active_rows::all(1000), [&](const task& t, unsigned w) {
        ASSERT_LT(w, cfg.threads);
        for (index_t i = t.begin; i < t.begin + t.count; ++i) hits[i].fetch_add(1);
    });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
    EXPECT_EQ(ex.barriers(), 1u);
}

INSTANTIATE_TEST_SUITE_P(Modes, ExecutorCoverage,
                         ::testing::Combine(::testing::Values(sched_mode::steal, sched_mode::fixed,
                                                              sched_mode::fifo),
                                            ::testing::Values(1u, 3u, 8u)));

TEST(FixedPoint, SumsAreOrderIndependent) {
    const data_matrix m = test::uniform_matrix(5000, 3, 21, -1e3, 1e3);
    const auto e = column_exponents(m.values(), 3);
    const fixed_point_codec codec(e, m.rows());
    std::vector<index_t> order(m.rows());
    std::iota(order.begin(), order.end(), 0);
    auto total = [&](const std::vector<index_t>& ord, std::size_t split) {
        centroid_accumulator a(1, 3), b(1, 3);
        for (std::size_t i = 0; i < ord.size(); ++i) (i < split ? a : b).add(0, m.row_ptr(ord[i]), codec);
        centroid_sums s(1, 3);
        s.merge(b);
        s.merge(a);
        std::vector<double> mean(3);
        s.mean(0, codec, mean.data());
        return mean;
    };
    const auto base = total(order, 0);
    std::mt19937_64 rng(5);
    for (int r = 0; r < 5; ++r) {
        std::shuffle(order.begin(), order.end(), rng);
        EXPECT_EQ(total(order, rng() % order.size()), base);
    }
    // and close to the exact mean
    for (std::size_t j = 0; j < 3; ++j) {
        long double s = 0;
        for (index_t i = 0; i < m.rows(); ++i) s += m.row_ptr(i)[j];
        EXPECT_NEAR(base[j], static_cast<double>(s / m.rows()), 1e-9);
    }
}

TEST(FixedPoint, TwoPartialSumsGiveTheMean) {
    const std::vector<double> rows{1, 1, 3, 3};
    const fixed_point_codec codec(column_exponents(rows, 2), 2);
    centroid_accumulator a(1, 2), b(1, 2);
    a.add(0, rows.data(), codec);
    b.add(0, rows.data() + 2, codec);
    centroid_sums s(1, 2);
    s.merge(a);
    s.merge(b);
    std::vector<double> mean(2);
    s.mean(0, codec, mean.data());
    EXPECT_EQ(mean, (std::vector<double>{2, 2}));
}

TEST(FixedPoint, TooManyTermsIsCapacityError) {
    const std::vector<int> e{0};
    EXPECT_THROW(fixed_point_codec(e, std::uint64_t{1} << 40), capacity_error);
}

TEST(FixedPoint, ExponentsSkipZeros) {
    const std::vector<double> v{0.0, 3.0, 0.0, -0.25};
    const auto e = column_exponents(v, 2);
    EXPECT_EQ(e[0], 0);
    EXPECT_EQ(e[1], binary_exponent(3.0));
}

TEST(RunMm, ZeroIterationsReturnsInitialCentroids) {
    const auto mx = test::blobs(200, 2, 2, 20.0, 1);
    engine_config cfg;
    cfg.max_iters = 0;
    kmeans_params p;
    p.k = 2;
    centroid_set init(2, 2);
    init.current = {mx.data.row(0)[0], mx.data.row(0)[1], mx.data.row(1)[0], mx.data.row(1)[1]};
    p.initial = init;
    const auto r = kmeans(mx.data, p, cfg);
    EXPECT_EQ(r.iterations, 0u);
    EXPECT_TRUE(r.metrics.empty());
    EXPECT_EQ(r.centroids.current, init.current);
}

TEST(RunMm, ShuffledTaskOrderGivesIdenticalCentroids) {
    const auto mx = test::blobs(3000, 4, 6, 3.0, 8);
    kmeans_params p;
    p.k = 6;
    engine_config cfg;
    cfg.threads = 3;
    cfg.task_size = 50;
    const auto a = kmeans(mx.data, p, cfg);
    cfg.task_shuffle_seed = 99;
    const auto b = kmeans(mx.data, p, cfg);
    EXPECT_EQ(a.centroids.current, b.centroids.current);
    EXPECT_EQ(a.assign, b.assign);
}

TEST(RunMm, OneBarrierPerIteration) {
    const auto mx = test::blobs(2000, 4, 4, 5.0, 3);
    kmeans_params p;
    p.k = 4;
    p.prune = prune_mode::none;
    engine_config cfg;
    cfg.threads = 2;
    cfg.max_iters = 7;
    cfg.convergence = converge_mode::iterations;
    const auto r = kmeans(mx.data, p, cfg);
    EXPECT_EQ(r.iterations, 7u);
    EXPECT_EQ(r.barriers, 7u);
}

}  // namespace
}  // namespace mmc
