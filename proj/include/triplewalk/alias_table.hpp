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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "triplewalk/random.hpp"

namespace triplewalk {

/// Walker/Vose alias table: O(1) draws from a fixed discrete distribution.
class AliasTable {
public:
    AliasTable() = default;
    /// Weights must be finite and non-negative with a positive sum.
    explicit AliasTable(std::span<const double> weights);

    std::size_t size() const noexcept { return probability_.size(); }
    bool empty() const noexcept { return probability_.empty(); }
    std::uint32_t sample(Rng& rng) const;

private:
    std::vector<double> probability_;
    std::vector<std::uint32_t> alias_;
};

}  // namespace triplewalk
