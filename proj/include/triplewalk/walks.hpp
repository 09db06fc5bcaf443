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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "triplewalk/alias_table.hpp"
#include "triplewalk/line_graph.hpp"
#include "triplewalk/random.hpp"

namespace triplewalk {

struct WalkConfig {
    std::size_t walks_per_node = 10;
    std::size_t max_length = 100;
    std::uint64_t seed = 1;
    unsigned threads = 1;

    void validate() const;
};

/// Flat storage of variable-length walks over line-graph nodes.
class WalkCorpus {
public:
    WalkCorpus() : offsets_{0} {}

    void add(std::span<const LineNodeId> walk);
    std::size_t size() const noexcept { return offsets_.size() - 1; }
    bool empty() const noexcept { return size() == 0; }
    std::span<const LineNodeId> walk(std::size_t i) const;
    std::size_t token_count() const noexcept { return tokens_.size(); }
    /// One past the largest node id that occurs, 0 for an empty corpus.
    std::size_t node_bound() const;

    friend bool operator==(const WalkCorpus&, const WalkCorpus&) = default;

private:
    friend WalkCorpus generate_walks(const LineGraph&, const WalkConfig&);

    std::vector<LineNodeId> tokens_;
    std::vector<std::size_t> offsets_;
};

/// First-order weighted transitions with per-node alias tables.
class WalkSampler {
public:
    /// Throws if any edge weight is negative or not finite, or if a node
    /// with neighbours has zero total weight.
    explicit WalkSampler(const LineGraph& lg);

    /// A neighbour u of `current` with probability w(current, u) / sum of
    /// w(current, .); nullopt iff `current` has no neighbours.
    std::optional<LineNodeId> sample_next(LineNodeId current, Rng& rng) const;

private:
    const LineGraph* graph_;
    std::vector<AliasTable> tables_;
};

/// walks_per_node walks from every node, ordered round-major (walk r of node
/// v sits at index r * node_count + v). Walk (v, r) draws from its own
/// random stream, so the corpus does not depend on the thread count.
WalkCorpus generate_walks(const LineGraph& lg, const WalkConfig& config);

/// One walk per line, space-separated line-node ids.
void write_corpus(std::ostream& out, const WalkCorpus& corpus);
WalkCorpus read_corpus(std::istream& in);
void save_corpus(const std::filesystem::path& path, const WalkCorpus& corpus);
WalkCorpus load_corpus(const std::filesystem::path& path);

}  // namespace triplewalk
