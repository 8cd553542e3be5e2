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

#ifndef MMC_EXTMEM_ROW_STORE_HPP
#define MMC_EXTMEM_ROW_STORE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mmc/core/types.hpp"
#include "mmc/engine/metrics.hpp"

namespace mmc {

/**
 * Read-only matrix file accessed with positional reads. Every read is rounded
 * out to whole pages; a page is charged once per call no matter how many of
 * the requested rows it holds. Safe for concurrent readers.
 */
class row_store {
public:
    row_store(const std::string& path, index_t n, std::size_t d, std::size_t page_bytes = 4096);
    ~row_store();
    row_store(const row_store&) = delete;
    row_store& operator=(const row_store&) = delete;

    index_t rows() const { return n_; }
    std::size_t cols() const { return d_; }
    std::size_t page_bytes() const { return page_; }
    const std::string& path() const { return path_; }

    // Reads rows `ids` (ascending) into out (ids.size() x d). Adds pages_read
    // and bytes_read to io; requested-byte accounting is the caller's.
    void read_rows(std::span<const index_t> ids, double* out, worker_counters& io) const;

    // Largest binary exponent per column, from one sequential scan.
    std::vector<int> scan_exponents() const;

private:
    std::string path_;
    int fd_ = -1;
    index_t n_;
    std::size_t d_;
    std::size_t page_;
    std::uint64_t file_bytes_;
};

}  // namespace mmc

#endif
