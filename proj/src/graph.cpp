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

#include "triplewalk/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "triplewalk/error.hpp"

namespace triplewalk {

namespace {

std::string_view trim_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t") == std::string_view::npos;
}

bool is_comment(std::string_view line) {
    auto pos = line.find_first_not_of(" \t");
    return pos != std::string_view::npos && line[pos] == '#';
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        auto tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    return fields;
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i == line.size()) break;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        fields.push_back(line.substr(i, j - i));
        i = j;
    }
    return fields;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "' for reading");
    return in;
}

// Compressed incidence: offsets has size+1 entries.
template <typename Pairs>
void build_csr(std::size_t size, const Pairs& pairs, std::vector<std::size_t>& offsets,
               std::vector<std::uint32_t>& values) {
    offsets.assign(size + 1, 0);
    for (auto [key, value] : pairs) ++offsets[key + 1];
    for (std::size_t i = 0; i < size; ++i) offsets[i + 1] += offsets[i];
    values.resize(offsets[size]);
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (auto [key, value] : pairs) values[cursor[key]++] = value;
}

}  // namespace

std::uint32_t StringTable::intern(std::string_view name) {
    auto [it, inserted] =
        ids_.try_emplace(std::string(name), static_cast<std::uint32_t>(names_.size()));
    if (inserted) names_.emplace_back(name);
    return it->second;
}

std::optional<std::uint32_t> StringTable::find(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

const std::string& StringTable::name(std::uint32_t id) const {
    if (id >= names_.size()) throw Error("string id " + std::to_string(id) + " out of range");
    return names_[id];
}

bool KnowledgeGraph::Builder::add(std::string_view subject, std::string_view predicate,
                                  std::string_view object) {
    Triple t{entities_.intern(subject), predicates_.intern(predicate), entities_.intern(object)};
    if (!seen_.emplace(t.subject, t.predicate, t.object).second) return false;
    triples_.push_back(t);
    return true;
}

KnowledgeGraph KnowledgeGraph::Builder::build() && {
    KnowledgeGraph g;
    g.entities_ = std::move(entities_);
    g.predicates_ = std::move(predicates_);
    g.triples_ = std::move(triples_);

    // Pairs are emitted in triple order, so each incidence list comes out sorted.
    std::vector<std::pair<EntityId, TripleId>> pairs;
    pairs.reserve(2 * g.triples_.size());
    for (TripleId t = 0; t < g.triples_.size(); ++t) {
        const Triple& tr = g.triples_[t];
        pairs.emplace_back(tr.subject, t);
        if (tr.object != tr.subject) pairs.emplace_back(tr.object, t);
    }
    build_csr(g.entities_.size(), pairs, g.incidence_offsets_, g.incidence_);
    seen_.clear();
    return g;
}

const Triple& KnowledgeGraph::triple(TripleId t) const {
    if (t >= triples_.size()) throw Error("triple id " + std::to_string(t) + " out of range");
    return triples_[t];
}

std::span<const TripleId> KnowledgeGraph::incidence(EntityId v) const {
    if (v >= entities_.size()) throw Error("entity id " + std::to_string(v) + " out of range");
    return std::span<const TripleId>(incidence_).subspan(
        incidence_offsets_[v], incidence_offsets_[v + 1] - incidence_offsets_[v]);
}

std::vector<std::size_t> KnowledgeGraph::predicate_frequencies() const {
    std::vector<std::size_t> freq(predicates_.size(), 0);
    for (const Triple& t : triples_) ++freq[t.predicate];
    return freq;
}

bool HomogeneousGraph::Builder::add(std::string_view a, std::string_view b) {
    if (a == b) throw Error("self-loop on node '" + std::string(a) + "'");
    NodeId u = nodes_.intern(a);
    NodeId v = nodes_.intern(b);
    if (!seen_.emplace(std::min(u, v), std::max(u, v)).second) return false;
    edges_.push_back({u, v});
    return true;
}

NodeId HomogeneousGraph::Builder::add_node(std::string_view a) { return nodes_.intern(a); }

HomogeneousGraph HomogeneousGraph::Builder::build() && {
    HomogeneousGraph g;
    g.nodes_ = std::move(nodes_);
    g.edges_ = std::move(edges_);
    std::vector<std::pair<NodeId, EdgeId>> pairs;
    pairs.reserve(2 * g.edges_.size());
    for (EdgeId e = 0; e < g.edges_.size(); ++e) {
        pairs.emplace_back(g.edges_[e].first, e);
        pairs.emplace_back(g.edges_[e].second, e);
    }
    build_csr(g.nodes_.size(), pairs, g.offsets_, g.incident_);
    seen_.clear();
    return g;
}

const Edge& HomogeneousGraph::edge(EdgeId e) const {
    if (e >= edges_.size()) throw Error("edge id " + std::to_string(e) + " out of range");
    return edges_[e];
}

std::size_t HomogeneousGraph::degree(NodeId v) const { return incident_edges(v).size(); }

std::span<const EdgeId> HomogeneousGraph::incident_edges(NodeId v) const {
    if (v >= nodes_.size()) throw Error("node id " + std::to_string(v) + " out of range");
    return std::span<const EdgeId>(incident_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

KnowledgeGraph parse_triples(std::istream& in) {
    KnowledgeGraph::Builder builder;
    std::string raw;
    std::size_t line_no = 0;
    std::size_t rows = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = trim_cr(raw);
        if (is_blank(line) || is_comment(line)) continue;
        auto fields = split_tabs(line);
        if (fields.size() != 3) {
            throw ParseError(line_no, "expected 3 tab-separated fields, found " +
                                          std::to_string(fields.size()));
        }
        for (auto f : fields) {
            if (f.empty()) throw ParseError(line_no, "empty field");
        }
        builder.add(fields[0], fields[1], fields[2]);
        ++rows;
    }
    if (rows == 0) throw ParseError(0, "no triples in input");
    return std::move(builder).build();
}

KnowledgeGraph load_triples(const std::filesystem::path& path) {
    auto in = open_input(path);
    try {
        return parse_triples(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

void write_triples(std::ostream& out, const KnowledgeGraph& g) {
    for (const Triple& t : g.triples()) {
        out << g.entities().name(t.subject) << '\t' << g.predicates().name(t.predicate) << '\t'
            << g.entities().name(t.object) << '\n';
    }
}

HomogeneousGraph parse_edge_list(std::istream& in) {
    HomogeneousGraph::Builder builder;
    std::string raw;
    std::size_t line_no = 0;
    std::size_t rows = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = trim_cr(raw);
        if (is_blank(line) || is_comment(line)) continue;
        auto fields = split_whitespace(line);
        if (fields.size() != 2) {
            throw ParseError(line_no, "expected 2 whitespace-separated node tokens, found " +
                                          std::to_string(fields.size()));
        }
        if (fields[0] == fields[1]) {
            throw ParseError(line_no, "self-loop on node '" + std::string(fields[0]) + "'");
        }
        builder.add(fields[0], fields[1]);
        ++rows;
    }
    if (rows == 0) throw ParseError(0, "no edges in input");
    return std::move(builder).build();
}

HomogeneousGraph load_edge_list(const std::filesystem::path& path) {
    auto in = open_input(path);
    try {
        return parse_edge_list(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

void write_edge_list(std::ostream& out, const HomogeneousGraph& g) {
    for (const Edge& e : g.edges()) {
        out << g.nodes().name(e.first) << ' ' << g.nodes().name(e.second) << '\n';
    }
}

TokenLabels parse_labels(std::istream& in) {
    TokenLabels labels;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = trim_cr(raw);
        if (is_blank(line) || is_comment(line)) continue;
        auto fields = split_tabs(line);
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
            throw ParseError(line_no, "expected 'token<TAB>label'");
        }
        labels[std::string(fields[0])].emplace(fields[1]);
    }
    return labels;
}

TokenLabels load_labels(const std::filesystem::path& path) {
    auto in = open_input(path);
    try {
        return parse_labels(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

}  // namespace triplewalk
