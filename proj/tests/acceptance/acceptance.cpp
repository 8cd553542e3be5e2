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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Tolerances are fixed here on purpose.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mmc/algorithms/fcmeans.hpp"
#include "mmc/algorithms/kmeans.hpp"
#include "mmc/algorithms/kmedoids.hpp"
#include "mmc/algorithms/mbkmeans.hpp"
#include "mmc/core/distance.hpp"
#include "mmc/core/matrix_io.hpp"
#include "mmc/core/mixture.hpp"
#include "mmc/extmem/sem_source.hpp"
#include "mmc/hier/hclust.hpp"
#include "serial_ref.hpp"

namespace fs = std::filesystem;
using namespace mmc;

namespace {

// losslessness
constexpr unsigned lossless_iters = 25;
// pruning efficacy
constexpr double mti_late_fraction = 0.20;
constexpr double mti_over_ti_total = 4.0;
// memory
constexpr std::uint64_t mem_slack = 4096;
// row cache
constexpr double cache_io_ratio = 0.5;
constexpr double cache_hit_rate = 0.9;
// hierarchical
constexpr int hier_min_good_seeds = 8;
// algorithm properties
constexpr double sse_tol = 1e-9;
constexpr double member_tol = 1e-9;
constexpr double fcm_rel_tol = 1e-7;
constexpr double minibatch_rel = 0.05;
// determinism
constexpr double margin_floor = 1e-6;
constexpr double thread_rel_tol = 1e-9;

struct outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

mixture make_mixture(std::size_t n, std::size_t d, std::size_t k, double sep, std::uint64_t seed) {
    mixture_spec s;
    s.n = n;
    s.d = d;
    s.true_k = k;
    s.separation = sep;
    s.seed = seed;
    return generate_mixture(s);
}

struct traced {
    mm_result result;
    std::vector<assignment_vector> assign;
    std::vector<std::vector<double>> centers;
};

traced run_traced(const data_matrix& m, const kmeans_params& p, const engine_config& cfg) {
    traced t;
    t.result = kmeans(m, p, cfg, [&](const iteration_view& v) {
        t.assign.push_back(v.assign);
        t.centers.push_back(v.centroids.current);
    });
    return t;
}

double rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
    }
    return worst;
}

outcome losslessness() {
    outcome o;
    int mixtures = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        for (double sep : {2.0, 20.0}) {
            const auto mx = make_mixture(10000, 8, 16, sep, seed);
            kmeans_params p;
            p.k = 16;
            p.init = {init_method::forgy, seed};
            engine_config cfg;
            cfg.threads = 4;
            cfg.max_iters = lossless_iters;
            cfg.convergence = converge_mode::iterations;
            p.prune = prune_mode::none;
            const auto none = run_traced(mx.data, p, cfg);
            for (auto mode : {prune_mode::mti, prune_mode::ti}) {
                p.prune = mode;
                const auto r = run_traced(mx.data, p, cfg);
                const std::string tag = std::string(to_string(mode)) + " seed " + std::to_string(seed) +
                                        " sep " + std::to_string(static_cast<int>(sep));
                o.require(r.assign == none.assign, "assignments differ, " + tag);
                o.require(r.centers == none.centers, "centroids differ, " + tag);
            }
            ++mixtures;
        }
    }
    o.detail << mixtures << " mixtures x " << lossless_iters
             << " iterations, none/mti/ti identical per iteration";
    return o;
}

// Shared by the pruning and cache criteria.
mixture separated_benchmark() { return make_mixture(50000, 8, 50, 10.0, 7); }

outcome pruning_efficacy(const mixture& mx) {
    outcome o;
    kmeans_params p;
    p.k = 50;
    p.init = {init_method::forgy, 3};
    engine_config cfg;
    cfg.threads = 4;
    cfg.max_iters = 30;
    cfg.convergence = converge_mode::iterations;
    p.prune = prune_mode::mti;
    const auto mti = kmeans(mx.data, p, cfg);
    p.prune = prune_mode::ti;
    const auto ti = kmeans(mx.data, p, cfg);
    const double nk = 50000.0 * 50.0;
    double worst_late = 0.0;
    std::uint64_t mti_total = 0, ti_total = 0;
    for (std::size_t t = 0; t < mti.metrics.size(); ++t) {
        const auto dm = mti.metrics[t].dist_comps, dt = ti.metrics[t].dist_comps;
        mti_total += dm;
        ti_total += dt;
        if (t + 1 >= 10) worst_late = std::max(worst_late, static_cast<double>(dm) / nk);
        o.require(dt <= dm, "TI > MTI at iteration " + std::to_string(t + 1));
    }
    o.require(worst_late <= mti_late_fraction, "MTI late fraction too high");
    const double ratio = static_cast<double>(mti_total) / static_cast<double>(ti_total);
    o.require(ratio <= mti_over_ti_total, "MTI total above 4x TI");
    o.detail << "max MTI dist/nk at t>=10 = " << worst_late << " (limit " << mti_late_fraction
             << "), MTI/TI total = " << ratio << " (limit " << mti_over_ti_total << ")";
    return o;
}

outcome memory_asymmetry() {
    outcome o;
    const auto mx = make_mixture(100000, 8, 100, 10.0, 11);
    engine_config cfg;
    cfg.threads = 8;
    cfg.max_iters = 1;
    auto aux = [&](prune_mode mode, std::size_t k) {
        kmeans_params p;
        p.k = k;
        p.prune = mode;
        return kmeans(mx.data, p, cfg).metrics.at(0).aux_bytes;
    };
    const std::uint64_t T = 8, d = 8, n = 100000;
    const auto mti_delta = aux(prune_mode::mti, 100) - aux(prune_mode::mti, 10);
    const auto ti_delta = aux(prune_mode::ti, 100) - aux(prune_mode::ti, 10);
    const std::uint64_t mti_limit = 8 * (100 * 100 - 10 * 10) + 8 * T * d * 90 + mem_slack;
    const std::uint64_t ti_floor = 8 * n * 90;
    o.require(mti_delta <= mti_limit, "MTI growth above bound");
    o.require(ti_delta >= ti_floor, "TI growth below n*k*8");
    o.detail << "MTI delta " << mti_delta << " <= " << mti_limit << ", TI delta " << ti_delta
             << " >= " << ti_floor;
    return o;
}

outcome backend_neutrality(const fs::path& work) {
    outcome o;
    const auto mx = make_mixture(10000, 8, 16, 10.0, 3);
    const auto path = (work / "neutral.bin").string();
    save_matrix(path, mx.data);
    kmeans_params p;
    p.k = 16;
    p.init = {init_method::forgy, 5};
    engine_config cfg;
    cfg.threads = 4;
    cfg.max_iters = 25;
    for (auto mode : {prune_mode::mti, prune_mode::ti, prune_mode::none}) {
        p.prune = mode;
        const auto mem = kmeans(mx.data, p, cfg);
        for (auto cache : {cache_mode::off, cache_mode::lazy, cache_mode::lru}) {
            sem_options opt;
            opt.cache = cache;
            opt.cache_bytes = 10000 * 64 / 2;
            const auto sem = sem_kmeans(path, 10000, 8, p, cfg, opt);
            const std::string tag = std::string(to_string(mode)) + "/" + std::string(to_string(cache));
            o.require(sem.centroids.current == mem.centroids.current, "centroids differ " + tag);
            o.require(sem.assign == mem.assign, "assignments differ " + tag);
            if (mode == prune_mode::none) {
                for (const auto& m : sem.metrics) o.require(m.rows_req == 10000, "rows_req != n " + tag);
            }
        }
    }
    o.detail << "sem == im for 3 prune modes x 3 cache modes; prune=none requests n rows per iteration";
    return o;
}

outcome row_cache_io(const mixture& mx, const fs::path& work) {
    outcome o;
    const auto path = (work / "cache.bin").string();
    save_matrix(path, mx.data);
    kmeans_params p;
    p.k = 50;
    p.init = {init_method::forgy, 3};
    engine_config cfg;
    cfg.threads = 4;
    cfg.max_iters = 30;
    cfg.convergence = converge_mode::iterations;
    sem_options opt;
    opt.icache = 5;
    opt.cache_bytes = mx.data.rows() * mx.data.cols() * sizeof(double);   // >= any active set
    opt.cache = cache_mode::off;
    const auto off = sem_kmeans(path, mx.data.rows(), mx.data.cols(), p, cfg, opt);
    opt.cache = cache_mode::lazy;
    const auto lazy = sem_kmeans(path, mx.data.rows(), mx.data.cols(), p, cfg, opt);
    std::uint64_t off_bytes = 0, lazy_bytes = 0;
    for (const auto& m : off.metrics) off_bytes += m.bytes_read;
    for (const auto& m : lazy.metrics) lazy_bytes += m.bytes_read;
    double hits = 0.0;
    const std::size_t last = lazy.metrics.size();
    for (std::size_t t = last - 10; t < last; ++t) hits += lazy.metrics[t].hit_rate();
    hits /= 10.0;
    const double ratio = static_cast<double>(lazy_bytes) / static_cast<double>(off_bytes);
    o.require(ratio <= cache_io_ratio, "lazy cache reads too much");
    o.require(hits >= cache_hit_rate, "final hit rate too low");
    o.require(lazy.assign == off.assign, "cache changed the result");
    o.detail << "bytes read lazy/off = " << lazy_bytes << "/" << off_bytes << " = " << ratio
             << " (limit " << cache_io_ratio << "), mean hit rate last 10 = " << hits << " (limit "
             << cache_hit_rate << ")";
    return o;
}

outcome hierarchical() {
    outcome o;
    int good_x = 0, good_g = 0;
    std::ostringstream counts;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto mx = make_mixture(8000, 8, 8, 20.0, seed);
        engine_config cfg;
        cfg.threads = 2;
        hier_params p;
        p.kmax = 32;
        p.kind = hier_kind::xmeans;
        const auto x = run_hierarchical(mx.data, p, cfg).leaf_ids.size();
        p.kind = hier_kind::gmeans;
        p.alpha = 0.0001;
        const auto g = run_hierarchical(mx.data, p, cfg).leaf_ids.size();
        good_x += x >= 7 && x <= 9;
        good_g += g >= 7 && g <= 9;
        counts << (seed > 1 ? " " : "") << x << "/" << g;
    }
    o.require(good_x >= hier_min_good_seeds, "xmeans leaf counts");
    o.require(good_g >= hier_min_good_seeds, "gmeans leaf counts");
    o.detail << "seeds in [7,9]: xmeans " << good_x << "/10, gmeans " << good_g
             << "/10; leaves (x/g) " << counts.str();
    return o;
}

outcome algorithm_properties() {
    outcome o;
    // (a) SSE never increases
    {
        double worst = 0.0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto mx = make_mixture(10000, 8, 16, seed % 2 ? 2.0 : 20.0, seed);
            kmeans_params p;
            p.k = 16;
            p.init = {init_method::forgy, seed};
            engine_config cfg;
            cfg.threads = 4;
            cfg.max_iters = 40;
            const auto r = kmeans(mx.data, p, cfg);
            for (std::size_t t = 1; t < r.metrics.size(); ++t) {
                worst = std::max(worst, r.metrics[t].objective - r.metrics[t - 1].objective);
            }
        }
        o.require(worst <= sse_tol, "(a) SSE increased");
        o.detail << "(a) max SSE rise " << worst;
    }
    // (b) fuzzy memberships and objective
    {
        double row_err = 0.0, rise = 0.0;
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const auto mx = make_mixture(5000, 8, 6, 3.0, seed);
            fcm_params p;
            p.k = 6;
            p.init = {init_method::forgy, seed};
            engine_config cfg;
            cfg.threads = 4;
            cfg.max_iters = 30;
            cfg.convergence = converge_mode::iterations;
            const auto r = fcmeans(mx.data, p, cfg);
            for (index_t i = 0; i < mx.data.rows(); ++i) {
                double s = 0.0;
                for (cluster_t c = 0; c < 6; ++c) s += r.membership_of(i, c);
                row_err = std::max(row_err, std::abs(s - 1.0));
            }
            const auto& ms = r.run.metrics;
            for (std::size_t t = 1; t < ms.size(); ++t) {
                rise = std::max(rise, (ms[t].objective - ms[t - 1].objective) / std::abs(ms[t - 1].objective));
            }
        }
        o.require(row_err <= member_tol, "(b) membership rows");
        o.require(rise <= fcm_rel_tol, "(b) J increased");
        o.detail << "; (b) max |row sum - 1| " << row_err << ", max relative J rise " << rise;
    }
    // (c) mini-batch against full batch
    {
        const auto mx = separated_benchmark();
        const auto init = init_centroids(mx.data, 50, {init_method::plusplus, 2});
        engine_config cfg;
        cfg.threads = 4;
        cfg.max_iters = 50;
        kmeans_params kp;
        kp.k = 50;
        kp.initial = init;
        const auto full = kmeans(mx.data, kp, cfg);
        minibatch_params mp;
        mp.k = 50;
        mp.batch_frac = 0.2;
        mp.initial = init;
        const auto mb = mbkmeans(mx.data, mp, cfg);
        const double sse_full = sse(mx.data, full.centroids, full.assign);
        const double sse_mb = sse(mx.data, mb.centroids, mb.assign);
        const double rel = (sse_mb - sse_full) / sse_full;
        o.require(rel <= minibatch_rel, "(c) mini-batch SSE");
        o.detail << "; (c) mini-batch SSE / full = " << sse_mb / sse_full;
    }
    // (d) CLARA against the exhaustive pair search
    {
        const auto mx = make_mixture(20, 2, 2, 6.0, 4);
        clara_params p;
        p.k = 2;
        p.sample_pct = 100.0;
        const auto r = kmedoids_clara(mx.data, p, {});
        const auto want = ref::best_medoid_pair(mx.data);
        o.require(r.cost == want.cost, "(d) CLARA cost");
        o.detail << "; (d) CLARA cost " << r.cost << " vs exhaustive " << want.cost;
    }
    // (e) spherical assignment against the cosine argmax
    {
        std::mt19937_64 rng(5);
        std::normal_distribution<double> z(0.0, 1.0);
        std::vector<double> v(1000 * 8);
        for (auto& x : v) x = z(rng);
        const data_matrix m = normalize_rows(data_matrix(1000, 8, std::move(v)));
        kmeans_params p;
        p.k = 10;
        engine_config cfg;
        cfg.threads = 4;
        cfg.tol = 0.0;   // fixed point: the last assignment saw the final centroids
        cfg.max_iters = 500;
        const auto r = skmeans(m, p, cfg);
        o.require(r.converged, "(e) skmeans did not reach a fixed point");
        std::size_t bad = 0;
        for (index_t i = 0; i < 1000; ++i) bad += r.assign[i] != ref::cosine_argmax(m.row_ptr(i), r.centroids.current, 8);
        o.require(bad == 0, "(e) skmeans assignment");
        o.detail << "; (e) cosine mismatches " << bad;
    }
    return o;
}

struct margin_run {
    traced run;
    double min_margin = 0.0;
};

margin_run run_with_margin(const data_matrix& m, const kmeans_params& p, const engine_config& cfg) {
    margin_run out;
    const std::vector<double> before = p.initial ? p.initial->current : init_centroids(m, p.k, p.init).current;
    out.min_margin = ref::min_margin(m, before, p.k);
    out.run.result = kmeans(m, p, cfg, [&](const iteration_view& v) {
        out.run.assign.push_back(v.assign);
        out.run.centers.push_back(v.centroids.current);
        out.min_margin = std::min(out.min_margin, ref::min_margin(m, v.centroids.current, p.k));
    });
    return out;
}

outcome determinism() {
    outcome o;
    double worst_rel = 0.0, worst_margin = 1e300;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto mx = make_mixture(20000, 8, 12, 10.0, 100 + seed);
        kmeans_params p;
        p.k = 12;
        p.init = {init_method::plusplus, seed};
        engine_config cfg;
        cfg.max_iters = 25;
        cfg.task_size = 512;
        cfg.threads = 1;
        const auto base = run_with_margin(mx.data, p, cfg);
        worst_margin = std::min(worst_margin, base.min_margin);
        o.require(base.min_margin > margin_floor, "dataset not margin-safe");
        for (unsigned T : {1u, 2u, 8u}) {
            cfg.threads = T;
            const auto a = run_traced(mx.data, p, cfg);
            const auto b = run_traced(mx.data, p, cfg);
            o.require(a.assign == b.assign && a.centers == b.centers,
                      "rerun differs at T=" + std::to_string(T));
            o.require(a.assign == base.run.assign, "assignments differ at T=" + std::to_string(T));
            for (std::size_t t = 0; t < a.centers.size() && t < base.run.centers.size(); ++t) {
                worst_rel = std::max(worst_rel, rel_diff(a.centers[t], base.run.centers[t]));
            }
        }
    }
    o.require(worst_rel <= thread_rel_tol, "centroids drift across T");
    o.detail << "T in {1,2,8}: reruns bit-identical, assignments identical, max centroid rel diff "
             << worst_rel << ", min margin " << worst_margin;
    return o;
}

outcome schedulers() {
    outcome o;
    const auto mx = make_mixture(20000, 8, 12, 10.0, 101);
    kmeans_params p;
    p.k = 12;
    p.init = {init_method::plusplus, 1};
    engine_config cfg;
    cfg.max_iters = 25;
    cfg.task_size = 512;
    cfg.threads = 4;
    const auto base = run_with_margin(mx.data, p, cfg);
    o.require(base.min_margin > margin_floor, "dataset not margin-safe");
    for (auto s : {sched_mode::steal, sched_mode::fixed, sched_mode::fifo}) {
        for (unsigned T : {1u, 2u, 8u}) {
            cfg.scheduler = s;
            cfg.threads = T;
            const auto r = run_traced(mx.data, p, cfg);
            o.require(r.assign == base.run.assign && r.centers == base.run.centers,
                      std::string(to_string(s)) + " differs at T=" + std::to_string(T));
        }
    }
    // timing report only
    const auto big = make_mixture(100000, 16, 32, 3.0, 5);
    p.k = 32;
    p.prune = prune_mode::none;
    cfg.max_iters = 5;
    cfg.convergence = converge_mode::iterations;
    cfg.scheduler = sched_mode::steal;
    cfg.task_size = 4096;
    o.detail << "steal/static/fifo identical; ms per iteration (prune=none, n=100000, k=32):";
    double t1 = 0.0;
    for (unsigned T : {1u, 2u, 4u, 8u}) {
        cfg.threads = T;
        const auto r = kmeans(big.data, p, cfg);
        double ms = 0.0;
        for (const auto& m : r.metrics) ms += m.wall_ms;
        ms /= static_cast<double>(r.metrics.size());
        if (T == 1) t1 = ms;
        char buf[96];
        std::snprintf(buf, sizeof buf, " T=%u %.1f (x%.2f)", T, ms, t1 / ms);
        o.detail << buf;
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    fs::path work = fs::temp_directory_path();
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::strcmp(argv[i], "--workdir") == 0) work = argv[i + 1];
    }
    work /= "acceptance_data";
    fs::create_directories(work);

    const auto bench = separated_benchmark();
    const std::vector<std::pair<const char*, std::function<outcome()>>> criteria = {
        {"1 losslessness", losslessness},
        {"2 pruning efficacy", [&] { return pruning_efficacy(bench); }},
        {"3 memory asymmetry", memory_asymmetry},
        {"4 backend neutrality", [&] { return backend_neutrality(work); }},
        {"5 row cache", [&] { return row_cache_io(bench, work); }},
        {"6 hierarchical model selection", hierarchical},
        {"7 algorithm properties", algorithm_properties},
        {"8 determinism and thread agreement", determinism},
        {"9 scheduler equivalence", schedulers},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %s: %s (%.1fs) %s\n", name, o.pass ? "PASS" : "FAIL", s, o.detail.str().c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    fs::remove_all(work);
    return failed == 0 ? 0 : 1;
}
