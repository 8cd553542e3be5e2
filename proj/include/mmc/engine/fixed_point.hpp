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

#ifndef MMC_ENGINE_FIXED_POINT_HPP
#define MMC_ENGINE_FIXED_POINT_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace mmc {

/**
 * Per-column fixed-point representation used for every cross-thread sum.
 *
 * Column j is scaled by 2^-s_j, where s_j is chosen from the column's largest
 * binary exponent and the maximum number of terms a sum may hold, so that no
 * 64-bit sum can overflow. Integer addition is associative: a sum is
 * bit-identical for any thread count, task order or add/remove history.
 */
class fixed_point_codec {
public:
    fixed_point_codec() = default;
    // exponents[j]: every |value| in column j is < 2^exponents[j].
    fixed_point_codec(std::span<const int> exponents, std::uint64_t max_terms);

    std::size_t cols() const { return scale_.size(); }
    int shift(std::size_t col) const { return shift_[col]; }
    // Number of significant bits kept for a value at the column maximum.
    int precision_bits() const { return bits_; }

    std::int64_t encode(double v, std::size_t col) const {
        return std::llround(v * scale_[col]);
    }
    double decode(std::int64_t q, std::size_t col) const {
        return static_cast<double>(q) * unit_[col];
    }

private:
    std::vector<double> scale_;   // 2^-shift
    std::vector<double> unit_;    // 2^shift
    std::vector<int> shift_;
    int bits_ = 0;
};

// Binary exponent e with |v| < 2^e (frexp convention); 0 for v == 0.
int binary_exponent(double v);

// Largest binary exponent per column of a row-major n x d block.
std::vector<int> column_exponents(std::span<const double> values, std::size_t d);

}  // namespace mmc

#endif
