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

#include "mmc/extmem/row_store.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <limits>

#include "mmc/core/error.hpp"
#include "mmc/engine/fixed_point.hpp"

namespace mmc {

row_store::row_store(const std::string& path, index_t n, std::size_t d, std::size_t page_bytes)
    : path_(path), n_(n), d_(d), page_(page_bytes) {
    if (n == 0 || d == 0) throw usage_error("row_store: n and d must be at least 1");
    if (page_bytes == 0) throw usage_error("row_store: page size must be positive");
    fd_ = ::open(path.c_str(), O_RDONLY);
    if (fd_ < 0) throw io_error("cannot open " + path + ": " + std::strerror(errno));
    struct stat st {};
    if (::fstat(fd_, &st) != 0) {
        ::close(fd_);
        throw io_error("cannot stat " + path);
    }
    file_bytes_ = static_cast<std::uint64_t>(st.st_size);
    if (file_bytes_ != n * d * sizeof(double)) {
        ::close(fd_);
        throw format_error(path + ": expected " + std::to_string(n * d * sizeof(double)) +
                           " bytes, found " + std::to_string(file_bytes_));
    }
}

row_store::~row_store() {
    if (fd_ >= 0) ::close(fd_);
}

namespace {

void read_fully(int fd, char* dst, std::size_t len, std::uint64_t off, const std::string& path) {
    while (len > 0) {
        const ssize_t got = ::pread(fd, dst, len, static_cast<off_t>(off));
        if (got < 0) {
            if (errno == EINTR) continue;
            throw io_error("read failed on " + path + ": " + std::strerror(errno));
        }
        if (got == 0) throw io_error("short read on " + path);
        dst += got;
        len -= static_cast<std::size_t>(got);
        off += static_cast<std::uint64_t>(got);
    }
}

}  // namespace

void row_store::read_rows(std::span<const index_t> ids, double* out, worker_counters& io) const {
    if (ids.empty()) return;
    const std::size_t row_bytes = d_ * sizeof(double);
    std::vector<char> buf;
    std::size_t i = 0;
    std::uint64_t pages = 0;
    std::uint64_t last_page_read = UINT64_MAX;
    while (i < ids.size()) {
        if (ids[i] >= n_) throw usage_error("row id " + std::to_string(ids[i]) + " out of range");
        // grow a run of rows whose pages are contiguous
        std::uint64_t first = ids[i] * row_bytes / page_;
        std::uint64_t last = ((ids[i] + 1) * row_bytes - 1) / page_;
        std::size_t j = i + 1;
        while (j < ids.size()) {
            if (ids[j] >= n_) throw usage_error("row id " + std::to_string(ids[j]) + " out of range");
            if (ids[j] <= ids[j - 1]) throw usage_error("row ids must be ascending");
            const std::uint64_t f = ids[j] * row_bytes / page_;
            if (f > last + 1) break;
            last = std::max(last, ((ids[j] + 1) * row_bytes - 1) / page_);
            ++j;
        }
        // a page shared with the previous run was already charged
        std::uint64_t charge_from = first == last_page_read ? first + 1 : first;
        if (charge_from <= last) pages += last - charge_from + 1;
        last_page_read = last;

        const std::uint64_t off = first * page_;
        const std::uint64_t end = std::min<std::uint64_t>((last + 1) * page_, file_bytes_);
        buf.resize(end - off);
        read_fully(fd_, buf.data(), buf.size(), off, path_);
        for (std::size_t r = i; r < j; ++r) {
            std::memcpy(out + r * d_, buf.data() + (ids[r] * row_bytes - off), row_bytes);
        }
        i = j;
    }
    io.pages_read += pages;
    io.bytes_read += pages * page_;
}

std::vector<int> row_store::scan_exponents() const {
    // same result as column_exponents() over the whole matrix
    std::vector<int> e(d_, std::numeric_limits<int>::min());
    const std::size_t chunk_rows = std::max<std::size_t>(1, (1 << 20) / (d_ * sizeof(double)));
    std::vector<double> buf(chunk_rows * d_);
    for (index_t start = 0; start < n_; start += chunk_rows) {
        const index_t count = std::min<index_t>(chunk_rows, n_ - start);
        read_fully(fd_, reinterpret_cast<char*>(buf.data()), count * d_ * sizeof(double),
                   start * d_ * sizeof(double), path_);
        for (std::size_t x = 0; x < count * d_; ++x) {
            if (buf[x] != 0.0) e[x % d_] = std::max(e[x % d_], binary_exponent(buf[x]));
        }
    }
    for (auto& x : e) {
        if (x == std::numeric_limits<int>::min()) x = 0;
    }
    return e;
}

}  // namespace mmc
