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

#include "triplewalk/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <thread>

#include "triplewalk/error.hpp"
#include "triplewalk/text.hpp"

namespace triplewalk {

void BlendCoefficients::validate() const {
    if (!(alpha >= 0.0 && beta >= 0.0 && gamma >= 0.0)) {
        throw ConfigError("blend coefficients must be non-negative");
    }
    if (std::abs(alpha + beta + gamma - 1.0) > 1e-12) {
        throw ConfigError("blend coefficients must sum to 1, got " +
                          format_real(alpha + beta + gamma));
    }
}

CooccurrenceCounts predicate_cooccurrence(const KnowledgeGraph& g) {
    return predicate_cooccurrence(g, build_triple_line_graph(g));
}

CooccurrenceCounts predicate_cooccurrence(const KnowledgeGraph& g, const LineGraph& lg) {
    if (lg.source() != LineSource::knowledge_graph || lg.node_count() != g.triple_count()) {
        throw Error("line graph does not belong to this knowledge graph");
    }
    const auto p = static_cast<Eigen::Index>(g.predicate_count());
    CooccurrenceCounts c;
    c.counts = Eigen::MatrixXd::Zero(p, p);
    c.predicate_frequency = g.predicate_frequencies();
    c.triple_count = g.triple_count();
    auto triples = g.triples();
    for (const LineEdge& e : lg.edges()) {
        PredicateId pa = triples[e.a].predicate;
        PredicateId pb = triples[e.b].predicate;
        c.counts(pa, pb) += 1.0;
        if (pa != pb) c.counts(pb, pa) += 1.0;
    }
    return c;
}

RelatednessMatrix predicate_relatedness(const CooccurrenceCounts& c) {
    const Eigen::Index p = c.counts.rows();
    if (c.counts.cols() != p) throw Error("co-occurrence matrix is not square");
    if (static_cast<Eigen::Index>(c.predicate_frequency.size()) != p) {
        throw Error("co-occurrence matrix has " + std::to_string(p) + " rows but " +
                    std::to_string(c.predicate_frequency.size()) + " predicate frequencies");
    }
    Eigen::VectorXd idf(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        idf(j) = std::log(1.0 + static_cast<double>(c.triple_count) /
                                    (1.0 + static_cast<double>(c.predicate_frequency[j])));
    }
    Eigen::MatrixXd profile = c.counts * idf.asDiagonal();
    Eigen::VectorXd norms = profile.rowwise().norm();

    RelatednessMatrix rel = RelatednessMatrix::Zero(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        rel(i, i) = 1.0;
        if (norms(i) == 0.0) continue;
        for (Eigen::Index j = i + 1; j < p; ++j) {
            if (norms(j) == 0.0) continue;
            double cosine = profile.row(i).dot(profile.row(j)) / (norms(i) * norms(j));
            rel(i, j) = rel(j, i) = std::clamp(cosine, 0.0, 1.0);
        }
    }
    return rel;
}

LineGraph weight_kg_line_graph(LineGraph lg, const KnowledgeGraph& g, const RelatednessMatrix& rel) {
    if (lg.source() != LineSource::knowledge_graph || lg.node_count() != g.triple_count()) {
        throw Error("line graph does not belong to this knowledge graph");
    }
    const auto p = static_cast<Eigen::Index>(g.predicate_count());
    if (rel.rows() < p || rel.cols() < p) {
        throw Error("relatedness matrix covers " + std::to_string(rel.rows()) + " predicates, graph has " +
                    std::to_string(p));
    }
    auto triples = g.triples();
    std::vector<double> weights;
    weights.reserve(lg.edge_count());
    for (const LineEdge& e : lg.edges()) {
        weights.push_back(rel(triples[e.a].predicate, triples[e.b].predicate));
    }
    lg.set_weights(std::move(weights));
    return lg;
}

namespace {

// Nodes unreachable from node 0, empty when connected.
std::vector<NodeId> unreachable_from_first(const HomogeneousGraph& g) {
    std::vector<char> seen(g.node_count(), 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (EdgeId e : g.incident_edges(v)) {
            NodeId u = g.edge(e).other(v);
            if (!seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
        }
    }
    std::vector<NodeId> missing;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!seen[v]) missing.push_back(v);
    }
    return missing;
}

// Sum over unordered index pairs of |x_s - x_t|.
double pairwise_abs_sum(std::vector<double>& x) {
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double total = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        total += x[j] * (2.0 * static_cast<double>(j) - (n - 1.0));
    }
    return total;
}

}  // namespace

CentralityVector current_flow_betweenness(const HomogeneousGraph& g, const CentralityOptions& options) {
    const std::size_t n = g.node_count();
    if (n < 3) throw Error("current-flow betweenness needs at least 3 nodes, got " + std::to_string(n));
    if (n > options.max_nodes) {
        throw Error("graph has " + std::to_string(n) + " nodes, above the exact current-flow limit of " +
                    std::to_string(options.max_nodes));
    }
    if (auto missing = unreachable_from_first(g); !missing.empty()) {
        throw Error("graph is disconnected: the component containing node '" +
                    g.nodes().name(missing.front()) + "' (" + std::to_string(missing.size()) +
                    " of " + std::to_string(n) + " nodes) is not reachable from node '" +
                    g.nodes().name(0) + "'");
    }

    const auto dim = static_cast<Eigen::Index>(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    // L + J/n is positive definite on a connected graph and its inverse minus
    // J/n is the Moore-Penrose pseudo-inverse of L.
    Eigen::MatrixXd shifted = Eigen::MatrixXd::Constant(dim, dim, inv_n);
    for (const Edge& e : g.edges()) {
        shifted(e.first, e.first) += 1.0;
        shifted(e.second, e.second) += 1.0;
        shifted(e.first, e.second) -= 1.0;
        shifted(e.second, e.first) -= 1.0;
    }
    Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>> llt(shifted);
    if (llt.info() != Eigen::Success) throw Error("Laplacian factorisation failed");
    Eigen::MatrixXd pinv = Eigen::MatrixXd::Identity(dim, dim);
    llt.solveInPlace(pinv);
    pinv.array() -= inv_n;

    // For edge (u, v) and unit s->t current, the edge current is
    // b[s] - b[t] with b = pinv.col(u) - pinv.col(v).
    auto edges = g.edges();
    std::vector<double> edge_flow(edges.size(), 0.0);
    auto work = [&](std::size_t begin, std::size_t end) {
        std::vector<double> b(n);
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t s = 0; s < n; ++s) {
                b[s] = pinv(static_cast<Eigen::Index>(s), edges[i].first) -
                       pinv(static_cast<Eigen::Index>(s), edges[i].second);
            }
            edge_flow[i] = pairwise_abs_sum(b);
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, edges.size()));
    if (threads == 1) {
        work(0, edges.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (edges.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t begin = std::min(edges.size(), t * chunk);
            std::size_t end = std::min(edges.size(), begin + chunk);
            pool.emplace_back(work, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    // Throughput of v for a pair is half the absolute current on its incident
    // edges; pairs with v as source or sink carry exactly 1/2 and are removed.
    const double nd = static_cast<double>(n);
    const double pairs = (nd - 1.0) * (nd - 2.0) / 2.0;
    CentralityVector cb(n, 0.0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        cb[edges[i].first] += 0.5 * edge_flow[i];
        cb[edges[i].second] += 0.5 * edge_flow[i];
    }
    for (double& value : cb) value = std::clamp((value - 0.5 * (nd - 1.0)) / pairs, 0.0, 1.0);
    return cb;
}

LineGraph weight_homogeneous_line_graph(LineGraph lg, const HomogeneousGraph& g,
                                        std::span<const double> centrality,
                                        const BlendCoefficients& coefficients) {
    coefficients.validate();
    if (lg.source() != LineSource::homogeneous || lg.node_count() != g.edge_count()) {
        throw Error("line graph does not belong to this homogeneous graph");
    }
    if (centrality.size() != g.node_count()) {
        throw Error("centrality vector has " + std::to_string(centrality.size()) + " entries, graph has " +
                    std::to_string(g.node_count()) + " nodes");
    }
    std::vector<double> weights;
    weights.reserve(lg.edge_count());
    for (const LineEdge& le : lg.edges()) {
        const Edge& ea = g.edge(le.a);
        const Edge& eb = g.edge(le.b);
        NodeId shared = eb.touches(ea.first) ? ea.first : ea.second;
        NodeId i = ea.other(shared);
        NodeId k = eb.other(shared);
        double w = coefficients.alpha * centrality[i] + coefficients.beta * centrality[shared] +
                   coefficients.gamma * centrality[k];
        weights.push_back(std::clamp(w, 0.0, 1.0));
    }
    lg.set_weights(std::move(weights));
    return lg;
}

LineGraph floor_weights(LineGraph lg, double floor) {
    std::vector<double> weights(lg.weights().begin(), lg.weights().end());
    for (double& w : weights) w = std::max(w, floor);
    lg.set_weights(std::move(weights));
    return lg;
}

void write_relatedness(std::ostream& out, const KnowledgeGraph& g, const RelatednessMatrix& rel) {
    for (PredicateId i = 0; i < g.predicate_count(); ++i) {
        for (PredicateId j = 0; j < g.predicate_count(); ++j) {
            out << g.predicates().name(i) << '\t' << g.predicates().name(j) << '\t'
                << format_real(rel(i, j)) << '\n';
        }
    }
}

void write_centrality(std::ostream& out, const HomogeneousGraph& g, std::span<const double> cb) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
        out << g.nodes().name(v) << '\t' << format_real(cb[v]) << '\n';
    }
}

}  // namespace triplewalk
