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

#include <numeric>

#include "mmc/algorithms/fcmeans.hpp"
#include "mmc/algorithms/kmedoids.hpp"
#include "mmc/algorithms/mbkmeans.hpp"
#include "mmc/core/error.hpp"
#include "mmc/core/matrix_io.hpp"
#include "mmc/extmem/row_cache.hpp"
#include "mmc/extmem/row_store.hpp"
#include "mmc/extmem/sem_source.hpp"
#include "mmc/hier/hclust.hpp"
#include "test_util.hpp"

namespace mmc {
namespace {

std::string write_matrix(const data_matrix& m, const std::string& tag) {
    const auto dir = test::scratch_dir(tag);
    const auto path = (dir / "data.bin").string();
    save_matrix(path, m);
    return path;
}

TEST(RowStore, PageAccounting) {
    // d = 8: one row is 64 bytes, 64 rows per 4 KiB page
    const data_matrix m = test::uniform_matrix(1000, 8, 1);
    const auto path = write_matrix(m, "store_pages");
    row_store store(path, 1000, 8);
    std::vector<double> out(3 * 8);
    worker_counters io;
    const std::vector<index_t> two{3, 9};
    store.read_rows(two, out.data(), io);
    EXPECT_EQ(io.bytes_read, 4096u);
    EXPECT_EQ(io.pages_read, 1u);
    EXPECT_TRUE(std::equal(out.begin(), out.begin() + 8, m.row(3).begin()));
    EXPECT_TRUE(std::equal(out.begin() + 8, out.begin() + 16, m.row(9).begin()));

    worker_counters io2;
    const std::vector<index_t> spread{0, 64, 640};
    store.read_rows(spread, out.data(), io2);
    EXPECT_EQ(io2.pages_read, 3u);
    EXPECT_EQ(io2.bytes_read, 3u * 4096u);
    EXPECT_TRUE(std::equal(out.begin() + 16, out.end(), m.row(640).begin()));
}

TEST(RowStore, RowsStraddlingPages) {
    // d = 5: 40-byte rows straddle 64-byte pages
    const data_matrix m = test::uniform_matrix(100, 5, 2);
    const auto path = write_matrix(m, "store_straddle");
    row_store store(path, 100, 5, 64);
    std::vector<double> out(2 * 5);
    worker_counters io;
    const std::vector<index_t> ids{1, 2};   // bytes [40, 120): pages 0 and 1
    store.read_rows(ids, out.data(), io);
    EXPECT_EQ(io.pages_read, 2u);
    EXPECT_TRUE(std::equal(out.begin(), out.begin() + 5, m.row(1).begin()));
    EXPECT_TRUE(std::equal(out.begin() + 5, out.end(), m.row(2).begin()));
}

TEST(RowStore, Errors) {
    const data_matrix m = test::uniform_matrix(10, 2, 3);
    const auto path = write_matrix(m, "store_errors");
    EXPECT_THROW(row_store(path, 11, 2), format_error);
    EXPECT_THROW(row_store(path + ".missing", 10, 2), io_error);
    row_store store(path, 10, 2);
    std::vector<double> out(4);
    worker_counters io;
    const std::vector<index_t> desc{5, 4};
    EXPECT_THROW(store.read_rows(desc, out.data(), io), usage_error);
    const std::vector<index_t> far{10};
    EXPECT_THROW(store.read_rows(far, out.data(), io), usage_error);
}

TEST(RowStore, ExponentScanMatchesInMemory) {
    data_matrix m = test::uniform_matrix(5000, 3, 4, -300, 7);
    const auto path = write_matrix(m, "store_exp");
    row_store store(path, 5000, 3);
    memory_source mem(m);
    EXPECT_EQ(store.scan_exponents(), mem.column_exponents());
}

TEST(RefreshSchedule, DoublingGaps) {
    std::vector<unsigned> due;
    for (unsigned t = 1; t <= 160; ++t) {
        if (refresh_due(t, 5)) due.push_back(t);
    }
    EXPECT_EQ(due, (std::vector<unsigned>{5, 15, 35, 75, 155}));
    EXPECT_FALSE(refresh_due(10, 5));
}

TEST(RowCache, ZeroCapacityNeverHits) {
    const data_matrix m = test::uniform_matrix(100, 4, 5);
    const auto path = write_matrix(m, "cache_zero");
    row_store store(path, 100, 4);
    row_cache cache(cache_mode::lazy, 0, 4, 1);
    sem_source src(store, &cache);
    src.bind(make_partitions(100, 2), 1);
    std::vector<index_t> ids(100);
    std::iota(ids.begin(), ids.end(), 0);
    for (unsigned it = 1; it <= 3; ++it) {
        worker_counters io;
        src.begin_iteration(it);
        src.request(ids, 0, io);
        src.end_iteration(it);
        EXPECT_EQ(io.cache_hits, 0u);
        EXPECT_EQ(io.cache_misses, 100u);
    }
}

TEST(RowCache, LazyRefreshThenFullHits) {
    const data_matrix m = test::uniform_matrix(1000, 8, 6);
    const auto path = write_matrix(m, "cache_lazy");
    row_store store(path, 1000, 8);
    row_cache cache(cache_mode::lazy, 1000 * 64, 8, 1);
    sem_source src(store, &cache);
    src.bind(make_partitions(1000, 3), 2);
    std::vector<index_t> active;
    for (index_t i = 0; i < 1000; i += 3) active.push_back(i);

    worker_counters io;
    src.begin_iteration(1);   // refresh iteration: stage what is requested
    src.request(std::span<const index_t>(active).first(150), 0, io);
    src.request(std::span<const index_t>(active).subspan(150), 1, io);
    src.end_iteration(1);
    EXPECT_EQ(cache.keys(), active);

    worker_counters again;
    src.begin_iteration(2);
    const auto rows = src.request(active, 0, again);
    src.end_iteration(2);
    EXPECT_EQ(again.cache_hits, active.size());
    EXPECT_EQ(again.bytes_read, 0u);
    for (std::size_t r = 0; r < active.size(); ++r) {
        EXPECT_TRUE(std::equal(rows[r], rows[r] + 8, m.row(active[r]).begin()));
    }
}

TEST(RowCache, LazyKeysStayFixedBetweenRefreshes) {
    const data_matrix m = test::uniform_matrix(400, 2, 7);
    const auto path = write_matrix(m, "cache_static");
    row_store store(path, 400, 2);
    row_cache cache(cache_mode::lazy, 100 * 16, 2, 2);
    sem_source src(store, &cache);
    src.bind(make_partitions(400, 2), 1);
    std::vector<index_t> evens, odds;
    for (index_t i = 0; i < 400; ++i) (i % 2 ? odds : evens).push_back(i);
    std::vector<std::vector<index_t>> snapshots;
    for (unsigned it = 1; it <= 7; ++it) {
        worker_counters io;
        src.begin_iteration(it);
        src.request(it % 2 ? odds : evens, 0, io);
        src.end_iteration(it);
        snapshots.push_back(cache.keys());
    }
    // refreshes at 2 and 6
    EXPECT_TRUE(snapshots[0].empty());
    EXPECT_EQ(snapshots[2], snapshots[1]);
    EXPECT_EQ(snapshots[4], snapshots[1]);
    EXPECT_EQ(snapshots[1].size(), 100u);
    EXPECT_LE(cache.cached_rows(), 100u);
    // lowest ids per partition win; each partition gets half the capacity
    EXPECT_EQ(cache.partition_capacity(0), 50u);
    EXPECT_EQ(snapshots[1].front(), 0u);
    EXPECT_EQ(snapshots[1][49], 98u);
    EXPECT_EQ(snapshots[1][50], 200u);
}

TEST(RowCache, LruEvictsLeastRecent) {
    const data_matrix m = test::uniform_matrix(10, 1, 8);
    const auto path = write_matrix(m, "cache_lru");
    row_store store(path, 10, 1);
    row_cache cache(cache_mode::lru, 2 * 8, 1);
    sem_source src(store, &cache);
    src.bind(make_partitions(10, 1), 1);
    worker_counters io;
    for (index_t id : {1, 2, 1, 3}) {
        const std::vector<index_t> one{id};
        src.request(one, 0, io);
    }
    EXPECT_EQ(cache.keys(), (std::vector<index_t>{1, 3}));
    EXPECT_EQ(io.cache_hits, 1u);
}

TEST(SemKmeans, BitIdenticalToInMemory) {
    const auto mx = test::blobs(10000, 8, 16, 10.0, 5);
    const auto path = write_matrix(mx.data, "sem_equal");
    kmeans_params p;
    p.k = 16;
    p.init = {init_method::forgy, 9};
    engine_config cfg;
    cfg.threads = 4;
    cfg.max_iters = 15;
    const auto mem = kmeans(mx.data, p, cfg);
    for (auto mode : {cache_mode::off, cache_mode::lazy, cache_mode::lru}) {
        sem_options opt;
        opt.cache = mode;
        opt.cache_bytes = 2 << 20;
        const auto sem = sem_kmeans(path, 10000, 8, p, cfg, opt);
        EXPECT_EQ(sem.centroids.current, mem.centroids.current) << to_string(mode);
        EXPECT_EQ(sem.assign, mem.assign) << to_string(mode);
        for (const auto& m : sem.metrics) {
            EXPECT_EQ(m.cache_hits + m.cache_misses, m.rows_req);
            EXPECT_EQ(m.bytes_req, m.rows_req * 8 * 8);
            EXPECT_EQ(m.bytes_read % 4096, 0u);
        }
    }
}

TEST(SemKmeans, UnprunedRequestsEveryRowEachIteration) {
    const auto mx = test::blobs(10000, 8, 8, 10.0, 2);
    const auto path = write_matrix(mx.data, "sem_none");
    kmeans_params p;
    p.k = 8;
    p.prune = prune_mode::none;
    engine_config cfg;
    cfg.max_iters = 4;
    cfg.convergence = converge_mode::iterations;
    sem_options opt;
    opt.cache = cache_mode::off;
    const auto r = sem_kmeans(path, 10000, 8, p, cfg, opt);
    for (const auto& m : r.metrics) {
        EXPECT_EQ(m.rows_req, 10000u);
        EXPECT_EQ(m.bytes_req, 10000u * 64);
        // 640000 bytes round up to whole pages
        EXPECT_EQ(m.bytes_read, (10000u * 64 + 4095) / 4096 * 4096);
    }
}

TEST(SemKmeans, ClauseOneRowsAreNotRequested) {
    const auto mx = test::blobs(5000, 8, 8, 20.0, 3);
    const auto path = write_matrix(mx.data, "sem_c1");
    kmeans_params p;
    p.k = 8;
    engine_config cfg;
    cfg.max_iters = 10;
    cfg.convergence = converge_mode::iterations;
    sem_options opt;
    opt.cache = cache_mode::off;
    const auto r = sem_kmeans(path, 5000, 8, p, cfg, opt);
    for (const auto& m : r.metrics) EXPECT_EQ(m.rows_req + m.prune_c1, 5000u);
}

TEST(Backends, OtherAlgorithmsAgree) {
    const auto mx = test::blobs(3000, 4, 4, 15.0, 4);
    const auto path = write_matrix(mx.data, "sem_algos");
    row_store store(path, 3000, 4);
    row_cache cache(cache_mode::lru, 1 << 16, 4);
    engine_config cfg;
    cfg.threads = 2;
    cfg.max_iters = 6;

    minibatch_params mb;
    mb.k = 4;
    {
        sem_source src(store, &cache);
        EXPECT_EQ(mbkmeans(src, mb, cfg).centroids.current, mbkmeans(mx.data, mb, cfg).centroids.current);
    }
    fcm_params fc;
    fc.k = 4;
    {
        sem_source src(store, &cache);
        EXPECT_EQ(fcmeans(src, fc, cfg).run.centroids.current, fcmeans(mx.data, fc, cfg).run.centroids.current);
    }
    clara_params cl;
    cl.k = 4;
    {
        sem_source src(store, &cache);
        EXPECT_EQ(kmedoids_clara(src, cl, cfg).medoids, kmedoids_clara(mx.data, cl, cfg).medoids);
    }
    hier_params hp;
    {
        sem_source src(store, nullptr);
        const auto a = run_hierarchical(src, hp, cfg);
        const auto b = run_hierarchical(mx.data, hp, cfg);
        EXPECT_EQ(a.keys, b.keys);
        EXPECT_EQ(a.centroids.current, b.centroids.current);
    }
}

}  // namespace
}  // namespace mmc
