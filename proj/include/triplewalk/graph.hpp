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
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace triplewalk {

using EntityId = std::uint32_t;
using PredicateId = std::uint32_t;
using TripleId = std::uint32_t;
using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Bidirectional map between strings and dense ids, in first-seen order.
class StringTable {
public:
    std::uint32_t intern(std::string_view name);
    std::optional<std::uint32_t> find(std::string_view name) const;
    const std::string& name(std::uint32_t id) const;
    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> ids_;
};

struct Triple {
    EntityId subject;
    PredicateId predicate;
    EntityId object;

    friend bool operator==(const Triple&, const Triple&) = default;
};

/// Directed edge-labelled multigraph of (subject, predicate, object) triples.
/// Immutable once built; safe to share between reader threads.
class KnowledgeGraph {
public:
    class Builder {
    public:
        /// Adds a triple; returns false when (s, p, o) was already present.
        bool add(std::string_view subject, std::string_view predicate,
                 std::string_view object);
        KnowledgeGraph build() &&;

    private:
        StringTable entities_;
        StringTable predicates_;
        std::vector<Triple> triples_;
        std::set<std::tuple<EntityId, PredicateId, EntityId>> seen_;
    };

    const StringTable& entities() const noexcept { return entities_; }
    const StringTable& predicates() const noexcept { return predicates_; }
    std::span<const Triple> triples() const noexcept { return triples_; }
    const Triple& triple(TripleId t) const;

    std::size_t entity_count() const noexcept { return entities_.size(); }
    std::size_t predicate_count() const noexcept { return predicates_.size(); }
    std::size_t triple_count() const noexcept { return triples_.size(); }

    /// Sorted ids of the triples in which `v` is subject or object. A
    /// self-loop triple (s == o) is listed once.
    std::span<const TripleId> incidence(EntityId v) const;

    /// Number of triples using each predicate.
    std::vector<std::size_t> predicate_frequencies() const;

private:
    StringTable entities_;
    StringTable predicates_;
    std::vector<Triple> triples_;
    std::vector<std::size_t> incidence_offsets_;
    std::vector<TripleId> incidence_;
};

struct Edge {
    NodeId first;
    NodeId second;

    /// The endpoint that is not `v`. `v` must be an endpoint.
    NodeId other(NodeId v) const noexcept { return v == first ? second : first; }
    bool touches(NodeId v) const noexcept { return v == first || v == second; }
};

/// Undirected simple graph. Edge orientation keeps the first-seen order of
/// the input line.
class HomogeneousGraph {
public:
    class Builder {
    public:
        /// Adds an undirected edge; returns false for a duplicate. Throws on
        /// self-loops.
        bool add(std::string_view a, std::string_view b);
        /// Registers a node without edges.
        NodeId add_node(std::string_view a);
        HomogeneousGraph build() &&;

    private:
        StringTable nodes_;
        std::vector<Edge> edges_;
        std::set<std::pair<NodeId, NodeId>> seen_;
    };

    const StringTable& nodes() const noexcept { return nodes_; }
    std::span<const Edge> edges() const noexcept { return edges_; }
    const Edge& edge(EdgeId e) const;

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    std::size_t degree(NodeId v) const;
    /// Ids of the edges touching `v`, ascending.
    std::span<const EdgeId> incident_edges(NodeId v) const;

private:
    StringTable nodes_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<EdgeId> incident_;
};

/// Parses `subject<TAB>predicate<TAB>object` lines. Blank lines and lines
/// starting with '#' are ignored. Duplicate triples collapse.
KnowledgeGraph parse_triples(std::istream& in);
KnowledgeGraph load_triples(const std::filesystem::path& path);
void write_triples(std::ostream& out, const KnowledgeGraph& g);

/// Parses whitespace separated `i j` pairs; '#' starts a comment line.
HomogeneousGraph parse_edge_list(std::istream& in);
HomogeneousGraph load_edge_list(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const HomogeneousGraph& g);

/// token -> label set, from `token<TAB>label` lines (repeat a token for
/// several labels).
using TokenLabels = std::map<std::string, std::set<std::string>>;
TokenLabels parse_labels(std::istream& in);
TokenLabels load_labels(const std::filesystem::path& path);

}  // namespace triplewalk
