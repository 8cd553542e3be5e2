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

#include "mmc/core/matrix_io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "mmc/core/error.hpp"

namespace mmc {

namespace {

template <typename T>
T byteswap_value(T v) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
    return v;
}

template <typename T>
void write_le(const std::filesystem::path& path, std::span<const T> v) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(v.data()),
                  static_cast<std::streamsize>(v.size_bytes()));
    } else {
        for (T x : v) {
            T s = byteswap_value(x);
            out.write(reinterpret_cast<const char*>(&s), sizeof(T));
        }
    }
    if (!out) throw io_error("write failed: " + path.string());
}

template <typename T>
std::vector<T> read_le(const std::filesystem::path& path) {
    std::error_code ec;
    const auto bytes = std::filesystem::file_size(path, ec);
    if (ec) throw io_error("cannot stat " + path.string() + ": " + ec.message());
    if (bytes % sizeof(T) != 0) {
        throw format_error(path.string() + ": size " + std::to_string(bytes) +
                           " is not a multiple of " + std::to_string(sizeof(T)));
    }
    std::vector<T> v(bytes / sizeof(T));
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string());
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(bytes));
    if (!in) throw io_error("short read: " + path.string());
    if constexpr (std::endian::native != std::endian::little) {
        for (auto& x : v) x = byteswap_value(x);
    }
    return v;
}

}  // namespace

data_matrix load_matrix(const std::filesystem::path& path, std::size_t n, std::size_t d,
                        unsigned partitions) {
    if (n == 0 || d == 0) throw usage_error("load_matrix: n and d must be >= 1");
    std::error_code ec;
    const auto bytes = std::filesystem::file_size(path, ec);
    if (ec) throw io_error("cannot stat " + path.string() + ": " + ec.message());
    if (bytes != n * d * sizeof(double)) {
        throw format_error(path.string() + ": expected " + std::to_string(n * d * sizeof(double)) +
                           " bytes for " + std::to_string(n) + "x" + std::to_string(d) +
                           ", found " + std::to_string(bytes));
    }
    return data_matrix(n, d, read_le<double>(path), partitions);
}

void save_matrix(const std::filesystem::path& path, const data_matrix& m) {
    write_le<double>(path, m.values());
}

void save_doubles(const std::filesystem::path& path, std::span<const double> v) {
    write_le<double>(path, v);
}

data_matrix load_csv(const std::filesystem::path& path, unsigned partitions) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path.string());
    std::vector<double> values;
    std::size_t d = 0, n = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t cols = 0;
        const char* p = line.data();
        const char* end = p + line.size();
        while (p <= end) {
            const char* comma = std::find(p, end, ',');
            std::string field(p, comma);
            double v = 0.0;
            try {
                std::size_t used = 0;
                v = std::stod(field, &used);
                while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) ++used;
                if (used != field.size()) throw std::invalid_argument(field);
            } catch (const std::out_of_range&) {
                throw data_error(path.string() + ":" + std::to_string(n + 1) + ": value out of range");
            } catch (const std::invalid_argument&) {
                throw format_error(path.string() + ":" + std::to_string(n + 1) +
                                   ": not a number: '" + field + "'");
            }
            values.push_back(v);
            ++cols;
            if (comma == end) break;
            p = comma + 1;
        }
        if (d == 0) d = cols;
        if (cols != d) {
            throw format_error(path.string() + ":" + std::to_string(n + 1) + ": expected " +
                               std::to_string(d) + " columns, found " + std::to_string(cols));
        }
        ++n;
    }
    if (n == 0) throw format_error(path.string() + ": no rows");
    return data_matrix(n, d, std::move(values), partitions);
}

void save_u32(const std::filesystem::path& path, std::span<const std::uint32_t> v) {
    write_le<std::uint32_t>(path, v);
}

std::vector<std::uint32_t> load_u32(const std::filesystem::path& path) {
    return read_le<std::uint32_t>(path);
}

void save_u64(const std::filesystem::path& path, std::span<const std::uint64_t> v) {
    write_le<std::uint64_t>(path, v);
}

std::uint64_t checksum_bytes(std::span<const unsigned char> bytes, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t checksum(std::span<const double> values) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (double x : values) {
        std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
        h = checksum_bytes(b, h);
    }
    return h;
}

}  // namespace mmc
