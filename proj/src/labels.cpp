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

#include "triplewalk/labels.hpp"

#include <fstream>
#include <istream>
#include <map>

#include "triplewalk/error.hpp"

namespace triplewalk {

namespace {

// Builds a dataset from per-line-node label sets.
LabeledDataset from_label_sets(std::span<const LabelSet> per_node) {
    std::map<std::string, std::uint32_t> class_of;
    std::vector<std::string> signatures(per_node.size());
    for (std::size_t v = 0; v < per_node.size(); ++v) {
        if (per_node[v].empty()) continue;
        signatures[v] = label_signature(per_node[v]);
        class_of.emplace(signatures[v], 0);
    }
    LabeledDataset ds;
    for (auto& [name, id] : class_of) {
        id = static_cast<std::uint32_t>(ds.class_names.size());
        ds.class_names.push_back(name);
    }
    for (std::size_t v = 0; v < per_node.size(); ++v) {
        if (per_node[v].empty()) continue;
        ds.nodes.push_back(static_cast<LineNodeId>(v));
        ds.classes.push_back(class_of.at(signatures[v]));
    }
    return ds;
}

template <typename Table>
EntityLabels labels_by_name(const Table& names, const TokenLabels& labels, std::size_t* unmatched) {
    EntityLabels result(names.size());
    std::size_t missing = 0;
    for (const auto& [token, set] : labels) {
        if (auto id = names.find(token)) {
            result[*id].insert(set.begin(), set.end());
        } else {
            ++missing;
        }
    }
    if (unmatched) *unmatched = missing;
    return result;
}

}  // namespace

std::string label_signature(const LabelSet& labels) {
    std::string sig;
    for (const auto& l : labels) {
        if (!sig.empty()) sig.push_back(',');
        sig += l;
    }
    return sig;
}

std::vector<RuleEntry> parse_rules(std::istream& in) {
    std::vector<RuleEntry> rules;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || line.find('\t', tab + 1) != std::string::npos) {
            throw ParseError(line_no, "expected 'predicate<TAB>direction'");
        }
        std::string direction = line.substr(tab + 1);
        RuleEntry rule{line.substr(0, tab), Direction::subject_to_object};
        if (direction == "forward") {
            rule.direction = Direction::subject_to_object;
        } else if (direction == "backward") {
            rule.direction = Direction::object_to_subject;
        } else {
            throw ParseError(line_no, "direction must be 'forward' or 'backward', got '" + direction + "'");
        }
        rules.push_back(std::move(rule));
    }
    return rules;
}

std::vector<RuleEntry> load_rules(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "' for reading");
    try {
        return parse_rules(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

std::vector<PropagationRule> resolve_rules(const KnowledgeGraph& g, std::span<const RuleEntry> rules) {
    std::vector<PropagationRule> resolved;
    for (const RuleEntry& r : rules) {
        auto id = g.predicates().find(r.predicate);
        if (!id) throw Error("propagation rule names unknown predicate '" + r.predicate + "'");
        resolved.push_back({*id, r.direction});
    }
    return resolved;
}

EntityLabels entity_labels(const KnowledgeGraph& g, const TokenLabels& labels, std::size_t* unmatched) {
    return labels_by_name(g.entities(), labels, unmatched);
}

EntityLabels node_labels(const HomogeneousGraph& g, const TokenLabels& labels, std::size_t* unmatched) {
    return labels_by_name(g.nodes(), labels, unmatched);
}

EntityLabels propagate_labels(const KnowledgeGraph& g, EntityLabels labels,
                              std::span<const PropagationRule> rules) {
    if (labels.size() != g.entity_count()) {
        throw Error("label table has " + std::to_string(labels.size()) + " entries, graph has " +
                    std::to_string(g.entity_count()) + " entities");
    }
    for (const PropagationRule& rule : rules) {
        if (rule.predicate >= g.predicate_count()) {
            throw Error("propagation rule names unknown predicate id " + std::to_string(rule.predicate));
        }
        const EntityLabels before = labels;
        for (const Triple& t : g.triples()) {
            if (t.predicate != rule.predicate) continue;
            EntityId from = rule.direction == Direction::subject_to_object ? t.subject : t.object;
            EntityId to = rule.direction == Direction::subject_to_object ? t.object : t.subject;
            labels[to].insert(before[from].begin(), before[from].end());
        }
    }
    return labels;
}

LabeledDataset label_triples(const KnowledgeGraph& g, const EntityLabels& labels) {
    if (labels.size() != g.entity_count()) throw Error("label table does not match the graph");
    std::vector<LabelSet> per_triple(g.triple_count());
    for (TripleId t = 0; t < g.triple_count(); ++t) {
        const Triple& tr = g.triple(t);
        per_triple[t] = labels[tr.subject];
        per_triple[t].insert(labels[tr.object].begin(), labels[tr.object].end());
    }
    return from_label_sets(per_triple);
}

LabeledDataset label_edges(const HomogeneousGraph& g, const EntityLabels& labels) {
    if (labels.size() != g.node_count()) throw Error("label table does not match the graph");
    std::vector<LabelSet> per_edge(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        per_edge[e] = labels[g.edge(e).first];
        per_edge[e].insert(labels[g.edge(e).second].begin(), labels[g.edge(e).second].end());
    }
    return from_label_sets(per_edge);
}

LabeledDataset label_tokens(std::span<const std::string> tokens, const TokenLabels& labels) {
    std::vector<LabelSet> per_node(tokens.size());
    for (std::size_t v = 0; v < tokens.size(); ++v) {
        if (auto it = labels.find(tokens[v]); it != labels.end()) per_node[v] = it->second;
    }
    return from_label_sets(per_node);
}

}  // namespace triplewalk
