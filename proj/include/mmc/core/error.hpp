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
#ifndef MMC_CORE_ERROR_HPP
#define MMC_CORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mmc {

// Bad arguments or configuration supplied by the caller.
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A file does not have the expected layout or size.
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input values are unusable (NaN, infinity).
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A mathematical precondition does not hold (zero-norm vector, ...).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An identifier space or fixed-size structure is exhausted.
struct capacity_error : std::length_error {
    using std::length_error::length_error;
};

}  // namespace mmc

#endif
