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

#ifndef MMC_ALGORITHMS_INIT_HPP
#define MMC_ALGORITHMS_INIT_HPP

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mmc/core/data_matrix.hpp"
#include "mmc/core/types.hpp"
#include "mmc/engine/metrics.hpp"
#include "mmc/engine/row_source.hpp"

namespace mmc {

enum class init_method { random_assign, forgy, plusplus };

struct init_spec {
    init_method method = init_method::forgy;
    std::uint64_t seed = 1;
};

std::string_view to_string(init_method m);
init_method parse_init_method(std::string_view s);

/// Seeds k centroids by reading rows through `src` on the calling thread.
/// `worker` names the scratch slot used for requests.
centroid_set init_centroids(row_source& src, std::size_t k, const init_spec& spec,
                            unsigned worker, worker_counters& io);
centroid_set init_centroids(const data_matrix& m, std::size_t k, const init_spec& spec);

// Selection probabilities D(v)^2 / sum D^2. All-zero input yields all zeros.
std::vector<double> plusplus_probabilities(std::span<const double> d2);

}  // namespace mmc

#endif
