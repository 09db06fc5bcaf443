/*
 * Copyright 2026 The triplewalk Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "triplewalk/alias_table.hpp"

#include <cmath>

#include "triplewalk/error.hpp"

namespace triplewalk {

AliasTable::AliasTable(std::span<const double> weights) {
    const std::size_t n = weights.size();
    if (n == 0) throw Error("alias table needs at least one weight");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw Error("alias table weights must be finite and >= 0");
        total += w;
    }
    if (!(total > 0.0)) throw Error("alias table weights sum to zero");

    probability_.resize(n);
    alias_.resize(n);
    std::vector<double> scaled(n);
    std::vector<std::uint32_t> small, large;
    for (std::size_t i = 0; i < n; ++i) {
        scaled[i] = weights[i] * static_cast<double>(n) / total;
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
        std::uint32_t s = small.back();
        small.pop_back();
        std::uint32_t l = large.back();
        probability_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    // Leftovers are 1 up to rounding.
    for (auto i : large) {
        probability_[i] = 1.0;
        alias_[i] = i;
    }
    for (auto i : small) {
        probability_[i] = 1.0;
        alias_[i] = i;
    }
}

std::uint32_t AliasTable::sample(Rng& rng) const {
    auto column = static_cast<std::uint32_t>(uniform_index(rng, probability_.size()));
    return uniform01(rng) < probability_[column] ? column : alias_[column];
}

}  // namespace triplewalk
