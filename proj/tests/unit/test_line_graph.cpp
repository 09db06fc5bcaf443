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

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "triplewalk/error.hpp"
#include "triplewalk/line_graph.hpp"

using namespace triplewalk;

namespace {

KnowledgeGraph kg(const std::string& text) {
    std::istringstream in(text);
    return parse_triples(in);
}

oracle::EdgeSet edge_set(const LineGraph& lg) {
    oracle::EdgeSet out;
    for (const auto& e : lg.edges()) out.emplace(e.a, e.b);
    return out;
}

}  // namespace

TEST(TripleLineGraph, SingleTriple) {
    auto lg = build_triple_line_graph(kg("a\tp\tb\n"));
    EXPECT_EQ(lg.node_count(), 1u);
    EXPECT_EQ(lg.edge_count(), 0u);
}

TEST(TripleLineGraph, SharedSubjectAndObjectGiveOneEdge) {
    auto lg = build_triple_line_graph(
        kg("LaurenOliver\tnationality\tAmericans\nLaurenOliver\tcitizenship\tAmericans\n"));
    EXPECT_EQ(lg.node_count(), 2u);
    EXPECT_EQ(lg.edge_count(), 1u);
}

TEST(TripleLineGraph, DirectionIsIgnored) {
    auto g = kg("a\tp\tb\nb\tq\tc\na\tr\tc\n");
    auto lg = build_triple_line_graph(g);
    EXPECT_EQ(lg.node_count(), 3u);
    EXPECT_EQ(lg.edge_count(), 3u);
    EXPECT_EQ(edge_set(lg), oracle::triple_line_edges(g));
}

TEST(TripleLineGraph, WeightsStartAtOne) {
    auto lg = build_triple_line_graph(kg("a\tp\tb\nb\tq\tc\n"));
    for (double w : lg.weights()) EXPECT_EQ(w, 1.0);
}

TEST(TripleLineGraph, SelfLoopTripleIsAdjacentToItsNeighbours) {
    auto g = kg("a\tp\ta\na\tq\tb\nc\tr\td\n");
    auto lg = build_triple_line_graph(g);
    EXPECT_EQ(edge_set(lg), oracle::triple_line_edges(g));
    EXPECT_EQ(lg.edge_count(), 1u);
}

TEST(TripleLineGraph, MatchesBruteForceOnRandomGraphs) {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 50; ++round) {
        auto g = oracle::random_kg(rng, 200, 50, 10);
        ASSERT_EQ(edge_set(build_triple_line_graph(g)), oracle::triple_line_edges(g));
    }
}

TEST(TripleLineGraph, EntityRelabellingGivesTheSameGraph) {
    // Triple ids follow input order, so permuting entity names while keeping
    // the triple order must leave the line graph unchanged.
    std::mt19937_64 rng(8);
    for (int round = 0; round < 20; ++round) {
        auto g = oracle::random_kg(rng, 100, 30, 5);
        std::vector<std::size_t> perm(g.entity_count());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        KnowledgeGraph::Builder b;
        for (const auto& t : g.triples()) {
            b.add("x" + std::to_string(perm[t.subject]), g.predicates().name(t.predicate),
                  "x" + std::to_string(perm[t.object]));
        }
        auto h = std::move(b).build();
        EXPECT_EQ(edge_set(build_triple_line_graph(h)), edge_set(build_triple_line_graph(g)));
    }
}

TEST(TripleLineGraph, ConnectedInputGivesConnectedLineGraph) {
    std::mt19937_64 rng(4);
    for (int round = 0; round < 30; ++round) {
        auto g = oracle::random_connected_kg(rng, 150, 40, 6);
        auto lg = build_triple_line_graph(g);
        EXPECT_EQ(oracle::component_count(lg.node_count(), edge_set(lg)), 1u);
    }
}

TEST(LineGraph, PathStarAndSingleEdge) {
    auto path = build_line_graph(oracle::graph_from_edges(3, {{0, 1}, {1, 2}}));
    EXPECT_EQ(path.node_count(), 2u);
    EXPECT_EQ(path.edge_count(), 1u);

    auto single = build_line_graph(oracle::graph_from_edges(2, {{0, 1}}));
    EXPECT_EQ(single.node_count(), 1u);
    EXPECT_EQ(single.edge_count(), 0u);

    auto star = build_line_graph(oracle::graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}}));
    EXPECT_EQ(star.node_count(), 3u);
    EXPECT_EQ(edge_set(star), (oracle::EdgeSet{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(LineGraph, EmptyInputsAreErrors) {
    EXPECT_THROW(build_line_graph(oracle::graph_from_edges(3, {})), Error);
}

TEST(LineGraph, CountIdentityOnRandomGraphs) {
    std::mt19937_64 rng(77);
    for (int round = 0; round < 30; ++round) {
        auto g = oracle::random_graph(rng, 30, 0.2);
        if (g.edge_count() == 0) continue;
        auto lg = build_line_graph(g);
        std::uint64_t sq = 0;
        for (NodeId v = 0; v < g.node_count(); ++v) sq += g.degree(v) * g.degree(v);
        EXPECT_EQ(lg.node_count(), g.edge_count());
        EXPECT_EQ(lg.edge_count(), sq / 2 - g.edge_count());
        EXPECT_EQ(edge_set(lg), oracle::line_edges(g));
    }
}

TEST(LineEdgeCountBound, Examples) {
    EXPECT_EQ(line_edge_count_bound(kg("a\tp\tb\n")), 0u);
    auto shared_one = kg("a\tp\tb\na\tq\tc\n");
    EXPECT_EQ(line_edge_count_bound(shared_one), 1u);
    EXPECT_EQ(build_triple_line_graph(shared_one).edge_count(), 1u);
    auto shared_both = kg("a\tp\tb\na\tq\tb\n");
    EXPECT_EQ(line_edge_count_bound(shared_both), 2u);
    EXPECT_EQ(build_triple_line_graph(shared_both).edge_count(), 1u);
}

TEST(LineEdgeCountBound, BoundsTheEdgeCount) {
    std::mt19937_64 rng(6);
    for (int round = 0; round < 30; ++round) {
        auto g = oracle::random_kg(rng, 200, 50, 5);
        EXPECT_LE(build_triple_line_graph(g).edge_count(), line_edge_count_bound(g));
    }
}

TEST(HubEntities, ThresholdIsStrict) {
    auto g = kg("h\tp\ta\nh\tp\tb\nh\tp\tc\na\tp\tb\n");
    EXPECT_EQ(hub_entities(g, 2), std::vector<EntityId>{0});
    EXPECT_TRUE(hub_entities(g, 3).empty());
}

TEST(LineGraph, ConstructorValidates) {
    EXPECT_THROW(LineGraph(LineSource::homogeneous, 2, {{0, 0}}), Error);
    EXPECT_THROW(LineGraph(LineSource::homogeneous, 2, {{0, 2}}), Error);
    LineGraph lg(LineSource::homogeneous, 3, {{2, 0}, {0, 2}, {1, 2}});
    ASSERT_EQ(lg.edge_count(), 2u);
    EXPECT_EQ(lg.edges()[0], (LineEdge{0, 2}));
    EXPECT_THROW(lg.set_weights({0.5, 1.5}), Error);
    EXPECT_THROW(lg.set_weights({0.5}), Error);
    lg.set_weights({0.25, 1.0});
    EXPECT_EQ(lg.weight(0), 0.25);
}

TEST(LineGraphFile, RoundTripsWeightsExactly) {
    LineGraph lg(LineSource::knowledge_graph, 4, {{0, 1}, {1, 2}, {2, 3}});
    lg.set_weights({0.1, 1.0 / 3.0, 1e-4});
    std::stringstream io;
    write_line_graph(io, lg);
    LineGraph back = read_line_graph(io);
    EXPECT_EQ(back.source(), LineSource::knowledge_graph);
    EXPECT_EQ(back.node_count(), 4u);
    ASSERT_EQ(back.edge_count(), 3u);
    for (LineEdgeId e = 0; e < 3; ++e) EXPECT_EQ(back.weight(e), lg.weight(e));
}

TEST(LineGraphFile, RejectsBadInput) {
    std::istringstream no_header("0 1 1\n");
    EXPECT_THROW(read_line_graph(no_header), Error);
    std::istringstream short_count("# triplewalk-line-graph nodes=3 edges=2 source=kg\n0 1 1\n");
    EXPECT_THROW(read_line_graph(short_count), Error);
    std::istringstream bad_weight("# triplewalk-line-graph nodes=3 edges=1 source=kg\n0 1 2\n");
    EXPECT_THROW(read_line_graph(bad_weight), Error);
}

TEST(NodeMap, TokensRoundTripThroughTheFile) {
    auto g = kg("a|b\tp\tc d\nc d\tq\te\n");
    std::stringstream io;
    write_node_map(io, g);
    auto tokens = read_node_map(io);
    EXPECT_EQ(tokens, line_node_tokens(g));
    EXPECT_EQ(tokens[0], "a%7Cb|p|c%20d");
}

TEST(NodeMap, HomogeneousTokens) {
    auto g = oracle::graph_from_edges(3, {{0, 1}, {2, 1}});
    EXPECT_EQ(line_node_tokens(g), (std::vector<std::string>{"0|1", "2|1"}));
    std::stringstream io;
    write_node_map(io, g);
    EXPECT_EQ(read_node_map(io), line_node_tokens(g));
}
