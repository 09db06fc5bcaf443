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

#include "triplewalk/line_graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "triplewalk/error.hpp"
#include "triplewalk/text.hpp"

namespace triplewalk {

namespace {

constexpr std::string_view kLineGraphMagic = "# triplewalk-line-graph";

std::uint64_t pack(LineNodeId a, LineNodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::vector<LineEdge> unpack_sorted(std::vector<std::uint64_t>& packed) {
    std::sort(packed.begin(), packed.end());
    packed.erase(std::unique(packed.begin(), packed.end()), packed.end());
    std::vector<LineEdge> edges;
    edges.reserve(packed.size());
    for (auto p : packed) {
        edges.push_back({static_cast<LineNodeId>(p >> 32), static_cast<LineNodeId>(p & 0xffffffffu)});
    }
    return edges;
}

const char* source_name(LineSource s) {
    return s == LineSource::knowledge_graph ? "kg" : "homogeneous";
}

template <typename T>
T parse_number(std::string_view text, std::size_t line_no, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError(line_no, std::string("invalid ") + what + " '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> fields_of(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= line.size()) {
        auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) pos = line.size();
        if (sep != ' ' || pos > start) out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

}  // namespace

LineGraph::LineGraph(LineSource source, std::size_t node_count, std::vector<LineEdge> edges)
    : source_(source), node_count_(node_count) {
    std::vector<std::uint64_t> packed;
    packed.reserve(edges.size());
    for (const LineEdge& e : edges) {
        if (e.a == e.b) throw Error("line graph self-loop at node " + std::to_string(e.a));
        if (e.a >= node_count || e.b >= node_count) {
            throw Error("line graph edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) +
                        ") out of range for " + std::to_string(node_count) + " nodes");
        }
        packed.push_back(pack(e.a, e.b));
    }
    edges.clear();
    edges.shrink_to_fit();
    edges_ = unpack_sorted(packed);
    weights_.assign(edges_.size(), 1.0);

    offsets_.assign(node_count_ + 1, 0);
    for (const LineEdge& e : edges_) {
        ++offsets_[e.a + 1];
        ++offsets_[e.b + 1];
    }
    for (std::size_t i = 0; i < node_count_; ++i) offsets_[i + 1] += offsets_[i];
    adjacency_.resize(offsets_[node_count_]);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (LineEdgeId id = 0; id < edges_.size(); ++id) {
        adjacency_[cursor[edges_[id].a]++] = {edges_[id].b, id};
        adjacency_[cursor[edges_[id].b]++] = {edges_[id].a, id};
    }
}

void LineGraph::set_weights(std::vector<double> weights) {
    if (weights.size() != edges_.size()) {
        throw Error("expected " + std::to_string(edges_.size()) + " weights, got " +
                    std::to_string(weights.size()));
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] >= 0.0 && weights[i] <= 1.0)) {
            throw Error("weight of line edge " + std::to_string(i) + " outside [0, 1]: " +
                        format_real(weights[i]));
        }
    }
    weights_ = std::move(weights);
}

std::span<const LineGraph::Neighbor> LineGraph::neighbors(LineNodeId v) const {
    if (v >= node_count_) throw Error("line node " + std::to_string(v) + " out of range");
    return std::span<const Neighbor>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

LineGraph build_triple_line_graph(const KnowledgeGraph& g) {
    if (g.triple_count() == 0) throw Error("cannot build a triple line graph of an empty graph");
    std::uint64_t bound = line_edge_count_bound(g);
    std::vector<std::uint64_t> packed;
    packed.reserve(static_cast<std::size_t>(bound));
    for (EntityId v = 0; v < g.entity_count(); ++v) {
        auto inc = g.incidence(v);
        for (std::size_t i = 0; i < inc.size(); ++i) {
            for (std::size_t j = i + 1; j < inc.size(); ++j) packed.push_back(pack(inc[i], inc[j]));
        }
    }
    return LineGraph(LineSource::knowledge_graph, g.triple_count(), unpack_sorted(packed));
}

LineGraph build_line_graph(const HomogeneousGraph& g) {
    if (g.edge_count() == 0) throw Error("cannot build the line graph of a graph without edges");
    std::vector<std::uint64_t> packed;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto inc = g.incident_edges(v);
        for (std::size_t i = 0; i < inc.size(); ++i) {
            for (std::size_t j = i + 1; j < inc.size(); ++j) packed.push_back(pack(inc[i], inc[j]));
        }
    }
    return LineGraph(LineSource::homogeneous, g.edge_count(), unpack_sorted(packed));
}

std::uint64_t line_edge_count_bound(const KnowledgeGraph& g) {
    std::uint64_t total = 0;
    for (EntityId v = 0; v < g.entity_count(); ++v) {
        std::uint64_t k = g.incidence(v).size();
        total += k * (k - (k > 0 ? 1 : 0)) / 2;
    }
    return total;
}

std::vector<EntityId> hub_entities(const KnowledgeGraph& g, std::size_t threshold) {
    std::vector<EntityId> hubs;
    for (EntityId v = 0; v < g.entity_count(); ++v) {
        if (g.incidence(v).size() > threshold) hubs.push_back(v);
    }
    return hubs;
}

std::string line_node_token(const KnowledgeGraph& g, LineNodeId v) {
    const Triple& t = g.triple(v);
    return escape_token(g.entities().name(t.subject)) + '|' +
           escape_token(g.predicates().name(t.predicate)) + '|' +
           escape_token(g.entities().name(t.object));
}

std::string line_node_token(const HomogeneousGraph& g, LineNodeId v) {
    const Edge& e = g.edge(v);
    return escape_token(g.nodes().name(e.first)) + '|' + escape_token(g.nodes().name(e.second));
}

std::vector<std::string> line_node_tokens(const KnowledgeGraph& g) {
    std::vector<std::string> tokens;
    tokens.reserve(g.triple_count());
    for (TripleId t = 0; t < g.triple_count(); ++t) tokens.push_back(line_node_token(g, t));
    return tokens;
}

std::vector<std::string> line_node_tokens(const HomogeneousGraph& g) {
    std::vector<std::string> tokens;
    tokens.reserve(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) tokens.push_back(line_node_token(g, e));
    return tokens;
}

void write_line_graph(std::ostream& out, const LineGraph& lg) {
    out << kLineGraphMagic << " nodes=" << lg.node_count() << " edges=" << lg.edge_count()
        << " source=" << source_name(lg.source()) << '\n';
    auto edges = lg.edges();
    auto weights = lg.weights();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        out << edges[i].a << ' ' << edges[i].b << ' ' << format_real(weights[i]) << '\n';
    }
}

LineGraph read_line_graph(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || !line.starts_with(kLineGraphMagic)) {
        throw ParseError(1, "missing '# triplewalk-line-graph' header");
    }
    std::size_t nodes = 0;
    std::size_t edge_count = 0;
    LineSource source = LineSource::knowledge_graph;
    bool have_nodes = false, have_edges = false, have_source = false;
    for (auto field : fields_of(std::string_view(line).substr(kLineGraphMagic.size()), ' ')) {
        auto eq = field.find('=');
        if (eq == std::string_view::npos) continue;
        auto key = field.substr(0, eq);
        auto value = field.substr(eq + 1);
        if (key == "nodes") {
            nodes = parse_number<std::size_t>(value, 1, "node count");
            have_nodes = true;
        } else if (key == "edges") {
            edge_count = parse_number<std::size_t>(value, 1, "edge count");
            have_edges = true;
        } else if (key == "source") {
            if (value == "kg") {
                source = LineSource::knowledge_graph;
            } else if (value == "homogeneous") {
                source = LineSource::homogeneous;
            } else {
                throw ParseError(1, "unknown line graph source '" + std::string(value) + "'");
            }
            have_source = true;
        }
    }
    if (!have_nodes || !have_edges || !have_source) {
        throw ParseError(1, "line graph header needs nodes=, edges= and source=");
    }

    std::vector<LineEdge> edges;
    std::vector<double> weights;
    edges.reserve(edge_count);
    weights.reserve(edge_count);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto f = fields_of(line, ' ');
        if (f.size() != 3) throw ParseError(line_no, "expected 'a b weight'");
        edges.push_back({parse_number<LineNodeId>(f[0], line_no, "line node"),
                         parse_number<LineNodeId>(f[1], line_no, "line node")});
        weights.push_back(parse_number<double>(f[2], line_no, "weight"));
        if (edges.back().a >= edges.back().b) {
            throw ParseError(line_no, "line graph edges must be written with a < b");
        }
        if (edges.size() > 1 && !(edges[edges.size() - 2] < edges.back())) {
            throw ParseError(line_no, "line graph edges must be sorted and unique");
        }
    }
    if (edges.size() != edge_count) {
        throw ParseError(0, "line graph header announces " + std::to_string(edge_count) +
                                " edges, file has " + std::to_string(edges.size()));
    }
    LineGraph lg(source, nodes, std::move(edges));
    lg.set_weights(std::move(weights));
    return lg;
}

void save_line_graph(const std::filesystem::path& path, const LineGraph& lg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    write_line_graph(out, lg);
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

LineGraph load_line_graph(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "' for reading");
    try {
        return read_line_graph(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

void write_node_map(std::ostream& out, const KnowledgeGraph& g) {
    for (TripleId t = 0; t < g.triple_count(); ++t) {
        const Triple& tr = g.triple(t);
        out << t << '\t' << g.entities().name(tr.subject) << '\t'
            << g.predicates().name(tr.predicate) << '\t' << g.entities().name(tr.object) << '\n';
    }
}

void write_node_map(std::ostream& out, const HomogeneousGraph& g) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        out << e << '\t' << g.nodes().name(g.edge(e).first) << '\t'
            << g.nodes().name(g.edge(e).second) << '\n';
    }
}

std::vector<std::string> read_node_map(std::istream& in) {
    std::vector<std::string> tokens;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto f = fields_of(line, '\t');
        if (f.size() != 3 && f.size() != 4) {
            throw ParseError(line_no, "expected 'id<TAB>s<TAB>p<TAB>o' or 'id<TAB>i<TAB>j'");
        }
        auto id = parse_number<std::size_t>(f[0], line_no, "line node id");
        if (id != tokens.size()) {
            throw ParseError(line_no, "line node ids must be contiguous from 0");
        }
        std::string token = escape_token(f[1]);
        for (std::size_t i = 2; i < f.size(); ++i) token += '|' + escape_token(f[i]);
        tokens.push_back(std::move(token));
    }
    return tokens;
}

std::vector<std::string> load_node_map(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "' for reading");
    try {
        return read_node_map(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

}  // namespace triplewalk
