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

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "triplewalk/graph.hpp"
#include "triplewalk/line_graph.hpp"

namespace triplewalk {

/// Predicate co-occurrence over adjacent triple pairs, with the statistics
/// needed for popularity weighting.
struct CooccurrenceCounts {
    /// counts(i, j): unordered pairs of distinct adjacent triples using
    /// predicates i and j. Symmetric.
    Eigen::MatrixXd counts;
    /// Number of triples using each predicate.
    std::vector<std::size_t> predicate_frequency;
    std::size_t triple_count = 0;
};

/// Rel(p_i, p_j) in [0, 1]; symmetric with a unit diagonal.
using RelatednessMatrix = Eigen::MatrixXd;

/// Per-node current-flow betweenness in [0, 1].
using CentralityVector = std::vector<double>;

/// Blend of endpoint centralities for a homogeneous line-graph edge joining
/// (i, j) and (j, k): alpha * cb(i) + beta * cb(j) + gamma * cb(k). The
/// shared endpoint j always takes beta. i belongs to the lower-numbered line
/// node.
struct BlendCoefficients {
    double alpha = 0.25;
    double beta = 0.5;
    double gamma = 0.25;

    /// Throws ConfigError unless all coefficients are >= 0 and sum to 1.
    void validate() const;
};

struct CentralityOptions {
    /// Dense exact computation is refused above this many nodes.
    std::size_t max_nodes = 10000;
    unsigned threads = 1;
};

/// Weight assigned to zero-weight edges before walking.
inline constexpr double kWeightFloor = 1e-4;

CooccurrenceCounts predicate_cooccurrence(const KnowledgeGraph& g);
/// Same as above, reusing the already-built triple line graph of `g`.
CooccurrenceCounts predicate_cooccurrence(const KnowledgeGraph& g, const LineGraph& lg);

/// Cosine similarity of co-occurrence rows whose entries are scaled by the
/// inverse popularity log(1 + |T| / (1 + freq(p_j))) of the column
/// predicate. All-zero rows relate to nothing except themselves.
RelatednessMatrix predicate_relatedness(const CooccurrenceCounts& c);

/// Weight of an edge between triples t and t' becomes Rel(p_t, p_t').
LineGraph weight_kg_line_graph(LineGraph lg, const KnowledgeGraph& g, const RelatednessMatrix& rel);

/// Exact current-flow betweenness via the Laplacian pseudo-inverse,
/// normalised by (n-1)(n-2)/2. Requires a connected graph with n >= 3.
CentralityVector current_flow_betweenness(const HomogeneousGraph& g,
                                          const CentralityOptions& options = {});

LineGraph weight_homogeneous_line_graph(LineGraph lg, const HomogeneousGraph& g,
                                        std::span<const double> centrality,
                                        const BlendCoefficients& coefficients);

/// Raises every weight below `floor` to `floor`.
LineGraph floor_weights(LineGraph lg, double floor = kWeightFloor);

/// `predA<TAB>predB<TAB>value` for all ordered predicate pairs.
void write_relatedness(std::ostream& out, const KnowledgeGraph& g, const RelatednessMatrix& rel);
/// `node<TAB>cb`.
void write_centrality(std::ostream& out, const HomogeneousGraph& g, std::span<const double> cb);

}  // namespace triplewalk
