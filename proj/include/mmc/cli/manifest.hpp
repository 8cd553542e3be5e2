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

#ifndef MMC_CLI_MANIFEST_HPP
#define MMC_CLI_MANIFEST_HPP

#include <filesystem>
#include <string>

#include "json.hpp"
#include "mmc/cli/options.hpp"

namespace mmc::cli {

inline constexpr const char* tool_version = "mmcluster 0.1.0";

nlohmann::json to_json(const run_options& o);
run_options run_options_from_json(const nlohmann::json& j);
nlohmann::json to_json(const mixture_spec& s);

// FNV-1a over a file's bytes; equals checksum() of the doubles it holds.
std::uint64_t file_checksum(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

// Options stored under "config" in a run manifest.
run_options load_run_manifest(const std::filesystem::path& path);

}  // namespace mmc::cli

#endif
