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

#include "mmc/engine/fixed_point.hpp"

#include <bit>
#include <limits>

#include "mmc/core/error.hpp"

namespace mmc {

int binary_exponent(double v) {
    if (v == 0.0) return 0;
    int e = 0;
    std::frexp(v, &e);
    return e;
}

std::vector<int> column_exponents(std::span<const double> values, std::size_t d) {
    std::vector<int> e(d, std::numeric_limits<int>::min());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == 0.0) continue;
        const int x = binary_exponent(values[i]);
        if (x > e[i % d]) e[i % d] = x;
    }
    for (auto& x : e) {
        if (x == std::numeric_limits<int>::min()) x = 0;
    }
    return e;
}

fixed_point_codec::fixed_point_codec(std::span<const int> exponents, std::uint64_t max_terms) {
    if (max_terms == 0) max_terms = 1;
    // terms * 2^bits must stay below 2^63
    const int term_bits = static_cast<int>(std::bit_width(max_terms - 1));
    bits_ = 62 - term_bits;
    if (bits_ < 24) throw capacity_error("fixed_point_codec: too many terms for 64-bit sums");
    scale_.resize(exponents.size());
    unit_.resize(exponents.size());
    shift_.resize(exponents.size());
    for (std::size_t j = 0; j < exponents.size(); ++j) {
        shift_[j] = exponents[j] - bits_;
        scale_[j] = std::ldexp(1.0, -shift_[j]);
        unit_[j] = std::ldexp(1.0, shift_[j]);
    }
}

}  // namespace mmc
