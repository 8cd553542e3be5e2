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

#include "mmc/cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "mmc/algorithms/fcmeans.hpp"
#include "mmc/algorithms/kmeanspp.hpp"
#include "mmc/algorithms/kmedoids.hpp"
#include "mmc/algorithms/mbkmeans.hpp"
#include "mmc/cli/manifest.hpp"
#include "mmc/core/error.hpp"
#include "mmc/core/matrix_io.hpp"
#include "mmc/extmem/sem_source.hpp"
#include "mmc/hier/hclust.hpp"

namespace fs = std::filesystem;

namespace mmc::cli {

namespace {

run_output from_mm(mm_result r) {
    run_output out;
    out.centroids = std::move(r.centroids);
    out.assign = std::move(r.assign);
    out.metrics = std::move(r.metrics);
    out.iterations = r.iterations;
    out.converged = r.converged;
    return out;
}

run_output dispatch(const run_options& o, row_source& src) {
    const engine_config cfg = o.engine();
    const init_spec init{parse_init_method(o.init), o.seed};
    if (o.alg == "kmeans" || o.alg == "skmeans" || o.alg == "kmeanspp") {
        kmeans_params p;
        p.k = o.k;
        p.init = init;
        p.prune = parse_prune_mode(o.prune);
        if (o.alg == "kmeans") return from_mm(kmeans(src, p, cfg));
        if (o.alg == "skmeans") return from_mm(skmeans(src, p, cfg));
        return from_mm(kmeanspp_multirun(src, p, o.runs, cfg).best);
    }
    if (o.alg == "mbkmeans") {
        minibatch_params p;
        p.k = o.k;
        p.batch_frac = o.batch_frac;
        p.init = init;
        return from_mm(mbkmeans(src, p, cfg));
    }
    if (o.alg == "fcmeans") {
        fcm_params p;
        p.k = o.k;
        p.fuzziness = o.z;
        p.init = init;
        return from_mm(fcmeans(src, p, cfg).run);
    }
    if (o.alg == "kmedoids") {
        auto r = kmedoids_clara(src, {o.k, o.sample_pct, o.seed}, cfg);
        run_output out = from_mm(std::move(r.run));
        out.medoids = std::move(r.medoids);
        return out;
    }
    hier_params hp;
    hp.kind = o.alg == "hmeans" ? hier_kind::hmeans : o.alg == "xmeans" ? hier_kind::xmeans : hier_kind::gmeans;
    hp.kmax = o.kmax;
    hp.lmax = o.lmax;
    hp.alpha = o.alpha;
    auto h = run_hierarchical(src, hp, cfg);
    run_output out;
    out.centroids = std::move(h.centroids);
    out.assign = std::move(h.assign);
    out.keys = std::move(h.keys);
    out.metrics = std::move(h.metrics);
    out.iterations = h.rounds;
    out.converged = true;
    return out;
}

}  // namespace

run_output execute_run(const run_options& o) {
    o.validate();
    if (o.mode == "sem") {
        row_store store(o.data, o.n, o.d, o.page_bytes);
        const cache_mode cm = parse_cache_mode(o.rc_mode);
        std::unique_ptr<row_cache> cache;
        if (cm != cache_mode::off) cache = std::make_unique<row_cache>(cm, o.rc_bytes, o.d, o.icache);
        sem_source src(store, cache.get());
        return dispatch(o, src);
    }
    const data_matrix m = load_matrix(o.data, o.n, o.d);
    memory_source src(m);
    return dispatch(o, src);
}

std::vector<std::string> counter_violations(const run_options& o, const run_output& r) {
    std::vector<std::string> bad;
    for (const auto& m : r.metrics) {
        const std::string at = "iteration " + std::to_string(m.iter) + ": ";
        if (m.bytes_req != m.rows_req * o.d * sizeof(double)) bad.push_back(at + "bytes_req != rows_req * d * 8");
        if (o.mode == "sem" && m.cache_hits + m.cache_misses != m.rows_req) {
            bad.push_back(at + "hits + misses != rows_req");
        }
        if (o.mode == "sem" && m.bytes_read % o.page_bytes != 0) bad.push_back(at + "bytes_read is not whole pages");
        if ((o.alg == "kmeans" || o.alg == "skmeans") && m.dist_comps > o.n * o.k) {
            bad.push_back(at + "more than n * k distance computations");
        }
    }
    return bad;
}

int cmd_gen(const gen_options& o, std::ostream& log) {
    o.spec.validate();
    fs::create_directories(o.out);
    const mixture mx = generate_mixture(o.spec);
    const fs::path dir(o.out);
    save_matrix(dir / "data.bin", mx.data);
    save_u32(dir / "labels.bin", mx.labels);
    nlohmann::json j;
    j["tool"] = tool_version;
    j["command"] = "gen";
    j["spec"] = to_json(o.spec);
    j["dataset"] = {{"path", (dir / "data.bin").string()},
                    {"n", mx.data.rows()},
                    {"d", mx.data.cols()},
                    {"checksum", checksum(mx.data.values())}};
    j["labels"] = (dir / "labels.bin").string();
    write_json(dir / "manifest.json", j);
    log << "wrote " << (dir / "data.bin").string() << " (" << mx.data.rows() << " x "
        << mx.data.cols() << "), checksum " << checksum(mx.data.values()) << '\n';
    return 0;
}

namespace {

void write_outputs(const run_options& o, const run_output& r) {
    const fs::path dir(o.out);
    fs::create_directories(dir);
    save_doubles(dir / "centroids.bin", r.centroids.current);
    save_u32(dir / "assign.bin", r.assign);
    if (!r.keys.empty()) save_u64(dir / "keys.bin", r.keys);
    if (!r.medoids.empty()) save_u64(dir / "medoids.bin", r.medoids);
    std::ofstream csv(dir / "metrics.csv");
    if (!csv) throw io_error("cannot write " + (dir / "metrics.csv").string());
    write_metrics_csv(csv, r.metrics);

    nlohmann::json j;
    j["tool"] = tool_version;
    j["command"] = "run";
    j["config"] = to_json(o);
    j["dataset"] = {{"path", o.data}, {"n", o.n}, {"d", o.d}, {"checksum", file_checksum(o.data)}};
    j["result"] = {{"iterations", r.iterations},
                   {"converged", r.converged},
                   {"clusters", r.centroids.k},
                   {"centroids_checksum", checksum(r.centroids.current)},
                   {"assign_checksum",
                    checksum_bytes({reinterpret_cast<const unsigned char*>(r.assign.data()),
                                    r.assign.size() * sizeof(cluster_t)})}};
    write_json(dir / "manifest.json", j);
}

}  // namespace

int cmd_run(const run_options& o, std::ostream& log) {
    const run_output r = execute_run(o);
    write_outputs(o, r);
    const auto bad = counter_violations(o, r);
    for (const auto& b : bad) log << "counter check failed: " << b << '\n';
    log << o.alg << ": " << r.iterations << " iterations, " << r.centroids.k << " clusters";
    if (!r.metrics.empty()) log << ", objective " << r.metrics.back().objective;
    log << '\n';
    return bad.empty() ? 0 : 1;
}

namespace {

std::vector<std::string> default_variants(const std::string& axis) {
    if (axis == "prune") return {"none", "mti", "ti"};
    if (axis == "scheduler") return {"steal", "static", "fifo"};
    if (axis == "cache") return {"off", "lazy", "lru"};
    if (axis == "threads") return {"1", "2", "4"};
    throw usage_error("unknown axis '" + axis + "' (expected prune, scheduler, cache or threads)");
}

run_options apply_variant(run_options o, const std::string& axis, const std::string& v) {
    if (axis == "prune") {
        o.prune = v;
    } else if (axis == "scheduler") {
        o.sched = v;
    } else if (axis == "cache") {
        o.mode = "sem";
        o.rc_mode = v;
    } else {
        o.threads = static_cast<unsigned>(std::stoul(v));
    }
    return o;
}

void write_compare_row(std::ostream& out, const char* type, const std::string& variant,
                       const iteration_metrics& m, bool summary) {
    out << type << ',' << variant << ',';
    if (summary) {
        iteration_metrics s = m;
        s.iter = 0;
        std::ostringstream row;
        write_metrics_row(row, s);
        // leave iter empty on summary rows
        out << row.str().substr(row.str().find(','));
    } else {
        write_metrics_row(out, m);
    }
    out << '\n';
}

}  // namespace

int cmd_compare(const run_options& base, const std::string& axis, std::vector<std::string> variants,
                std::ostream& log) {
    if (variants.empty()) variants = default_variants(axis);
    default_variants(axis);   // validates the axis name
    const fs::path dir(base.out);
    fs::create_directories(dir);
    std::ofstream csv(dir / "compare.csv");
    if (!csv) throw io_error("cannot write " + (dir / "compare.csv").string());
    csv << "row_type,variant," << metrics_csv_header << '\n';

    std::vector<run_output> results;
    bool ok = true;
    for (const auto& v : variants) {
        const run_options o = apply_variant(base, axis, v);
        results.push_back(execute_run(o));
        const auto& r = results.back();
        iteration_metrics total;
        for (const auto& m : r.metrics) {
            write_compare_row(csv, "iter", v, m, false);
            total.wall_ms += m.wall_ms;
            total.dist_comps += m.dist_comps;
            total.prune_c1 += m.prune_c1;
            total.prune_c2 += m.prune_c2;
            total.prune_c3 += m.prune_c3;
            total.reassigned += m.reassigned;
            total.rows_req += m.rows_req;
            total.bytes_req += m.bytes_req;
            total.bytes_read += m.bytes_read;
            total.cache_hits += m.cache_hits;
            total.cache_misses += m.cache_misses;
            total.aux_bytes = std::max(total.aux_bytes, m.aux_bytes);
            total.objective = m.objective;
        }
        write_compare_row(csv, "summary", v, total, true);
        log << axis << '=' << v << ": dist_comps " << total.dist_comps << ", peak aux_bytes "
            << total.aux_bytes << ", bytes_read " << total.bytes_read << ", wall_ms " << total.wall_ms
            << '\n';
        for (const auto& b : counter_violations(o, r)) {
            log << "counter check failed (" << v << "): " << b << '\n';
            ok = false;
        }
    }

    // Every axis varies something that must not change the answer.
    bool same = true;
    for (std::size_t i = 1; i < results.size(); ++i) {
        same = same && results[i].assign == results[0].assign &&
               results[i].centroids.current == results[0].centroids.current;
    }
    const char* name = axis == "prune" ? "losslessness" : "result equivalence";
    log << "check " << name << ": " << (same ? "pass" : "FAIL") << '\n';
    ok = ok && same;
    log << "wrote " << (dir / "compare.csv").string() << '\n';
    return ok ? 0 : 1;
}

namespace {

void add_run_flags(CLI::App& app, run_options& o) {
    app.add_option("--data", o.data, "matrix file (raw little-endian doubles)");
    app.add_option("--n", o.n, "rows");
    app.add_option("--d", o.d, "columns");
    app.add_option("--alg", o.alg,
                   "kmeans, skmeans, kmeanspp, mbkmeans, fcmeans, kmedoids, hmeans, xmeans, gmeans");
    app.add_option("--k", o.k, "clusters");
    app.add_option("--init", o.init, "random, forgy or plusplus");
    app.add_option("--prune", o.prune, "none, mti or ti");
    app.add_option("--sched", o.sched, "steal, static or fifo");
    app.add_option("--convergence", o.convergence, "fraction, drift or iterations");
    app.add_option("--threads", o.threads, "worker threads")->envname("MMCLUSTER_THREADS");
    app.add_option("--partitions", o.partitions, "row partitions (0: one per thread)");
    app.add_option("--task-size", o.task_size, "rows per task");
    app.add_option("--max-iters", o.max_iters, "iteration cap");
    app.add_option("--tol", o.tol, "convergence tolerance");
    app.add_option("--mode", o.mode, "im (in memory) or sem (file backed)");
    app.add_option("--rc-bytes", o.rc_bytes, "row cache capacity in bytes");
    app.add_option("--rc-mode", o.rc_mode, "off, lazy or lru");
    app.add_option("--icache", o.icache, "lazy cache refresh interval");
    app.add_option("--page-bytes", o.page_bytes, "read granularity");
    app.add_option("--z", o.z, "fuzziness for fcmeans");
    app.add_option("--batch-frac", o.batch_frac, "mini-batch fraction");
    app.add_option("--sample-pct", o.sample_pct, "CLARA sample percentage");
    app.add_option("--runs", o.runs, "kmeans++ runs");
    app.add_option("--kmax", o.kmax, "leaf cap for xmeans / gmeans");
    app.add_option("--lmax", o.lmax, "level cap for hmeans");
    app.add_option("--alpha", o.alpha, "gmeans significance");
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--out", o.out, "output directory");
}

// Finds "--config <path>" or "--config=<path>" ahead of the real parse.
std::string find_config(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) return argv[i + 1];
        if (std::strncmp(argv[i], "--config=", 9) == 0) return argv[i] + 9;
    }
    return {};
}

}  // namespace

int main_entry(int argc, char** argv) {
    CLI::App app{"mmcluster: parallel MM clustering"};
    app.require_subcommand(1);

    gen_options gen;
    auto* g = app.add_subcommand("gen", "generate a Gaussian mixture dataset");
    g->add_option("--n", gen.spec.n, "rows");
    g->add_option("--d", gen.spec.d, "columns");
    g->add_option("--k", gen.spec.true_k, "mixture components");
    g->add_option("--sep", gen.spec.separation, "minimum center distance in standard deviations");
    g->add_option("--seed", gen.spec.seed, "random seed");
    g->add_option("--out", gen.out, "output directory");

    run_options run;
    std::string config;
    const std::string preset = find_config(argc, argv);
    if (!preset.empty()) {
        try {
            run = load_run_manifest(preset);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 2;
        }
    }
    auto* r = app.add_subcommand("run", "run one algorithm");
    add_run_flags(*r, run);
    r->add_option("--config", config, "rerun the configuration stored in a run manifest");

    run_options cmp = run;
    std::string axis;
    std::vector<std::string> variants;
    auto* c = app.add_subcommand("compare", "run variants along one axis with identical seeds");
    add_run_flags(*c, cmp);
    c->add_option("--config", config, "base configuration from a run manifest");
    c->add_option("--axis", axis, "prune, scheduler, cache or threads")->required();
    c->add_option("--variants", variants, "values along the axis (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (g->parsed()) return cmd_gen(gen, std::cout);
        if (r->parsed()) return cmd_run(run, std::cout);
        return cmd_compare(cmp, axis, variants, std::cout);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace mmc::cli
