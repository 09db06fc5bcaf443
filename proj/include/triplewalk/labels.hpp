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
#include <set>
#include <span>
#include <string>
#include <vector>

#include "triplewalk/graph.hpp"
#include "triplewalk/line_graph.hpp"

namespace triplewalk {

using LabelSet = std::set<std::string>;
/// Label set per entity (or per node), indexed by id.
using EntityLabels = std::vector<LabelSet>;

enum class Direction { subject_to_object, object_to_subject };

struct PropagationRule {
    PredicateId predicate;
    Direction direction;
};

/// A rule as written in a rules file, before predicate resolution.
struct RuleEntry {
    std::string predicate;
    Direction direction;
};

/// Line-graph nodes paired with dense class ids. Each node appears once.
struct LabeledDataset {
    std::vector<LineNodeId> nodes;
    std::vector<std::uint32_t> classes;
    /// Class id -> label-set signature (sorted labels joined by ',').
    std::vector<std::string> class_names;

    std::size_t size() const noexcept { return nodes.size(); }
    std::size_t class_count() const noexcept { return class_names.size(); }
};

/// Rules file: `predicate<TAB>direction` per line, direction one of
/// `forward` (subject to object) or `backward` (object to subject).
std::vector<RuleEntry> parse_rules(std::istream& in);
std::vector<RuleEntry> load_rules(const std::filesystem::path& path);
/// Throws if a rule names a predicate that is not in `g`.
std::vector<PropagationRule> resolve_rules(const KnowledgeGraph& g, std::span<const RuleEntry> rules);

/// Seed labels by entity name; tokens that are not entities of `g` are
/// ignored and counted in `unmatched` when given.
EntityLabels entity_labels(const KnowledgeGraph& g, const TokenLabels& labels,
                           std::size_t* unmatched = nullptr);
EntityLabels node_labels(const HomogeneousGraph& g, const TokenLabels& labels,
                         std::size_t* unmatched = nullptr);

/// Applies each rule once, in order. A rule unions the labels its source
/// endpoint held before the rule started into the target endpoint of every
/// triple using the rule's predicate.
EntityLabels propagate_labels(const KnowledgeGraph& g, EntityLabels labels,
                              std::span<const PropagationRule> rules);

/// Triple t gets labels(s) | labels(o); each distinct non-empty set becomes
/// a class, numbered in lexicographic order of its signature. Triples with
/// no labels are left out.
LabeledDataset label_triples(const KnowledgeGraph& g, const EntityLabels& labels);
/// Same construction for the edges of a homogeneous graph.
LabeledDataset label_edges(const HomogeneousGraph& g, const EntityLabels& labels);
/// Labels given directly per line-node token.
LabeledDataset label_tokens(std::span<const std::string> tokens, const TokenLabels& labels);

/// Sorted labels joined by ','.
std::string label_signature(const LabelSet& labels);

}  // namespace triplewalk
