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
#include <span>
#include <string>
#include <vector>

#include "triplewalk/graph.hpp"

namespace triplewalk {

using LineNodeId = std::uint32_t;
using LineEdgeId = std::uint32_t;

/// What the line-graph nodes stand for. Line node `i` is triple `i` of the
/// source knowledge graph, or edge `i` of the source homogeneous graph.
enum class LineSource { knowledge_graph, homogeneous };

struct LineEdge {
    LineNodeId a;  // a < b
    LineNodeId b;

    friend bool operator==(const LineEdge&, const LineEdge&) = default;
    friend auto operator<=>(const LineEdge&, const LineEdge&) = default;
};

/// Weighted, undirected, simple graph over the edges (or triples) of a source
/// graph. Every weight lies in [0, 1]; fresh graphs carry weight 1.0.
class LineGraph {
public:
    struct Neighbor {
        LineNodeId node;
        LineEdgeId edge;
    };

    /// Normalises orientation, sorts and deduplicates `edges`. Throws on
    /// self-loops or out-of-range endpoints.
    LineGraph(LineSource source, std::size_t node_count, std::vector<LineEdge> edges);

    LineSource source() const noexcept { return source_; }
    std::size_t node_count() const noexcept { return node_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    std::span<const LineEdge> edges() const noexcept { return edges_; }
    std::span<const double> weights() const noexcept { return weights_; }
    double weight(LineEdgeId e) const { return weights_.at(e); }

    /// Replaces all weights. Throws unless there is one weight per edge and
    /// each lies in [0, 1].
    void set_weights(std::vector<double> weights);

    std::span<const Neighbor> neighbors(LineNodeId v) const;
    std::size_t degree(LineNodeId v) const { return neighbors(v).size(); }

private:
    LineSource source_;
    std::size_t node_count_;
    std::vector<LineEdge> edges_;
    std::vector<double> weights_;
    std::vector<std::size_t> offsets_;
    std::vector<Neighbor> adjacency_;
};

/// Two triples are adjacent iff they share an endpoint, whatever the edge
/// directions. Pairs sharing both endpoints yield a single edge.
LineGraph build_triple_line_graph(const KnowledgeGraph& g);

/// Classic line graph: edges adjacent iff they share a node.
LineGraph build_line_graph(const HomogeneousGraph& g);

/// Sum over entities of C(|incidence(v)|, 2); an upper bound on the edge
/// count of the triple line graph, tight when no two triples share both
/// endpoints.
std::uint64_t line_edge_count_bound(const KnowledgeGraph& g);

/// Entities appearing in more than `threshold` triples. Each contributes
/// quadratically many line-graph edges.
std::vector<EntityId> hub_entities(const KnowledgeGraph& g, std::size_t threshold);

/// `s|p|o` for a triple, `i|j` for an edge; components are escape_token'ed.
std::string line_node_token(const KnowledgeGraph& g, LineNodeId v);
std::string line_node_token(const HomogeneousGraph& g, LineNodeId v);
std::vector<std::string> line_node_tokens(const KnowledgeGraph& g);
std::vector<std::string> line_node_tokens(const HomogeneousGraph& g);

/// Edge list `a b weight` behind a `# triplewalk-line-graph` header line.
void write_line_graph(std::ostream& out, const LineGraph& lg);
LineGraph read_line_graph(std::istream& in);
void save_line_graph(const std::filesystem::path& path, const LineGraph& lg);
LineGraph load_line_graph(const std::filesystem::path& path);

/// Node map lines `id<TAB>s<TAB>p<TAB>o` (knowledge graphs) or
/// `id<TAB>i<TAB>j` (homogeneous graphs).
void write_node_map(std::ostream& out, const KnowledgeGraph& g);
void write_node_map(std::ostream& out, const HomogeneousGraph& g);
/// Reads a node map back as line-node tokens, indexed by line-node id.
std::vector<std::string> read_node_map(std::istream& in);
std::vector<std::string> load_node_map(const std::filesystem::path& path);

}  // namespace triplewalk
