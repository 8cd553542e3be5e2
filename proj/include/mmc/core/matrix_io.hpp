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
#ifndef MMC_CORE_MATRIX_IO_HPP
#define MMC_CORE_MATRIX_IO_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mmc/core/data_matrix.hpp"

namespace mmc {

// Raw matrix files hold n*d little-endian IEEE-754 doubles, row-major, with no
// header. The shape is supplied by the caller.
data_matrix load_matrix(const std::filesystem::path& path, std::size_t n,
                        std::size_t d, unsigned partitions = 1);
void save_matrix(const std::filesystem::path& path, const data_matrix& m);
void save_doubles(const std::filesystem::path& path, std::span<const double> v);

// One row per line, comma separated, no header.
data_matrix load_csv(const std::filesystem::path& path, unsigned partitions = 1);

void save_u32(const std::filesystem::path& path, std::span<const std::uint32_t> v);
std::vector<std::uint32_t> load_u32(const std::filesystem::path& path);
void save_u64(const std::filesystem::path& path, std::span<const std::uint64_t> v);

// 64-bit FNV-1a over the little-endian byte image of the values.
std::uint64_t checksum(std::span<const double> values);
std::uint64_t checksum_bytes(std::span<const unsigned char> bytes,
                             std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace mmc

#endif
