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

#include "mmc/cli/manifest.hpp"

#include <fstream>
#include <vector>

#include "mmc/core/error.hpp"
#include "mmc/core/matrix_io.hpp"

namespace mmc::cli {

nlohmann::json to_json(const run_options& o) {
    return {
        {"data", o.data},       {"n", o.n},
        {"d", o.d},             {"alg", o.alg},
        {"k", o.k},             {"init", o.init},
        {"prune", o.prune},     {"sched", o.sched},
        {"convergence", o.convergence},
        {"threads", o.threads}, {"partitions", o.partitions},
        {"task_size", o.task_size},
        {"max_iters", o.max_iters},
        {"tol", o.tol},         {"mode", o.mode},
        {"rc_bytes", o.rc_bytes},
        {"rc_mode", o.rc_mode}, {"icache", o.icache},
        {"page_bytes", o.page_bytes},
        {"z", o.z},             {"batch_frac", o.batch_frac},
        {"sample_pct", o.sample_pct},
        {"runs", o.runs},       {"kmax", o.kmax},
        {"lmax", o.lmax},       {"alpha", o.alpha},
        {"seed", o.seed},       {"out", o.out},
    };
}

run_options run_options_from_json(const nlohmann::json& j) {
    run_options o;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) j.at(key).get_to(field);
    };
    get("data", o.data);
    get("n", o.n);
    get("d", o.d);
    get("alg", o.alg);
    get("k", o.k);
    get("init", o.init);
    get("prune", o.prune);
    get("sched", o.sched);
    get("convergence", o.convergence);
    get("threads", o.threads);
    get("partitions", o.partitions);
    get("task_size", o.task_size);
    get("max_iters", o.max_iters);
    get("tol", o.tol);
    get("mode", o.mode);
    get("rc_bytes", o.rc_bytes);
    get("rc_mode", o.rc_mode);
    get("icache", o.icache);
    get("page_bytes", o.page_bytes);
    get("z", o.z);
    get("batch_frac", o.batch_frac);
    get("sample_pct", o.sample_pct);
    get("runs", o.runs);
    get("kmax", o.kmax);
    get("lmax", o.lmax);
    get("alpha", o.alpha);
    get("seed", o.seed);
    get("out", o.out);
    return o;
}

nlohmann::json to_json(const mixture_spec& s) {
    return {{"n", s.n}, {"d", s.d}, {"true_k", s.true_k}, {"separation", s.separation}, {"seed", s.seed}};
}

std::uint64_t file_checksum(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string());
    std::vector<unsigned char> buf(1 << 20);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    while (in) {
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        const auto got = static_cast<std::size_t>(in.gcount());
        if (got == 0) break;
        h = checksum_bytes(std::span<const unsigned char>(buf.data(), got), h);
    }
    return h;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw format_error(path.string() + ": " + e.what());
    }
}

run_options load_run_manifest(const std::filesystem::path& path) {
    const auto j = read_json(path);
    if (!j.contains("config")) throw format_error(path.string() + " has no \"config\" section");
    try {
        return run_options_from_json(j.at("config"));
    } catch (const nlohmann::json::exception& e) {
        throw format_error(path.string() + ": " + e.what());
    }
}

}  // namespace mmc::cli
