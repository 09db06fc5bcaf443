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

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "triplewalk/error.hpp"
#include "triplewalk/graph.hpp"

using namespace triplewalk;

namespace {

KnowledgeGraph kg(const std::string& text) {
    std::istringstream in(text);
    return parse_triples(in);
}

HomogeneousGraph edges(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

}  // namespace

TEST(ParseTriples, MinimalInput) {
    auto g = kg("a\tp\tb\n");
    EXPECT_EQ(g.entity_count(), 2u);
    EXPECT_EQ(g.predicate_count(), 1u);
    EXPECT_EQ(g.triple_count(), 1u);
}

TEST(ParseTriples, DuplicatesCollapse) {
    auto g = kg("a\tp\tb\na\tp\tb\n");
    EXPECT_EQ(g.triple_count(), 1u);
}

TEST(ParseTriples, IdsFollowFirstAppearance) {
    auto g = kg("# header\nx\tq\ty\n\ny\tp\tz\n");
    EXPECT_EQ(g.entities().name(0), "x");
    EXPECT_EQ(g.entities().name(1), "y");
    EXPECT_EQ(g.entities().name(2), "z");
    EXPECT_EQ(g.predicates().name(0), "q");
    EXPECT_EQ(g.triple(1).subject, 1u);
    EXPECT_EQ(g.triple(1).predicate, 1u);
}

TEST(ParseTriples, WrongFieldCountReportsLine) {
    try {
        kg("a\tp\tb\na\tp\n");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(kg("a\tp\tb\tc\n"), ParseError);
}

TEST(ParseTriples, EmptyInputIsAnError) {
    EXPECT_THROW(kg(""), Error);
    EXPECT_THROW(kg("# only a comment\n\n"), Error);
}

TEST(ParseTriples, KeepsUtf8AndSpacesInsideFields) {
    auto g = kg("Zoë Saldaña\tstarring in\tAvatar (film)\n");
    EXPECT_EQ(g.entities().name(0), "Zoë Saldaña");
    EXPECT_EQ(g.predicates().name(0), "starring in");
}

TEST(Incidence, Examples) {
    auto one = kg("a\tp\tb\n");
    ASSERT_EQ(one.incidence(0).size(), 1u);
    EXPECT_EQ(one.incidence(0)[0], 0u);

    auto two = kg("a\tp\tb\nb\tq\tc\n");
    auto inc = two.incidence(*two.entities().find("b"));
    ASSERT_EQ(inc.size(), 2u);
    EXPECT_EQ(inc[0], 0u);
    EXPECT_EQ(inc[1], 1u);
}

TEST(Incidence, SelfLoopListedOnce) {
    auto g = kg("a\tp\ta\n");
    ASSERT_EQ(g.incidence(0).size(), 1u);
    EXPECT_EQ(g.incidence(0)[0], 0u);
}

TEST(Incidence, InvalidIdThrows) {
    auto g = kg("a\tp\tb\n");
    EXPECT_THROW(g.incidence(2), Error);
}

TEST(Incidence, MatchesMembershipOnRandomGraphs) {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 30; ++round) {
        auto g = oracle::random_kg(rng, 1000, 80, 10);
        std::size_t total = 0;
        for (EntityId v = 0; v < g.entity_count(); ++v) {
            auto inc = g.incidence(v);
            total += inc.size();
            ASSERT_TRUE(std::is_sorted(inc.begin(), inc.end()));
            for (TripleId t = 0; t < g.triple_count(); ++t) {
                const auto& tr = g.triple(t);
                bool member = tr.subject == v || tr.object == v;
                bool listed = std::binary_search(inc.begin(), inc.end(), t);
                ASSERT_EQ(member, listed);
            }
        }
        std::size_t expected = 0;
        for (const auto& t : g.triples()) expected += t.subject == t.object ? 1 : 2;
        EXPECT_EQ(total, expected);
    }
}

TEST(ParseTriples, RoundTripIsStable) {
    std::mt19937_64 rng(5);
    auto g = oracle::random_kg(rng, 300, 40, 6);
    std::ostringstream out;
    write_triples(out, g);
    auto h = kg(out.str());
    ASSERT_EQ(h.triple_count(), g.triple_count());
    EXPECT_EQ(h.entities().names(), g.entities().names());
    EXPECT_EQ(h.predicates().names(), g.predicates().names());
    for (TripleId t = 0; t < g.triple_count(); ++t) EXPECT_EQ(h.triple(t), g.triple(t));
}

TEST(ParseEdgeList, Examples) {
    auto g = edges("0 1\n1 2\n");
    EXPECT_EQ(g.node_count(), 3u);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_EQ(edges("0 1\n1 0\n").edge_count(), 1u);
    auto spaced = edges("# comment\n  3\t4  \n\n");
    EXPECT_EQ(spaced.edge_count(), 1u);
}

TEST(ParseEdgeList, Errors) {
    EXPECT_THROW(edges("0 0\n"), Error);
    try {
        edges("0 1\n1\n");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(edges("0 1 2\n"), ParseError);
}

TEST(ParseEdgeList, KarateFile) {
    auto g = load_edge_list(TRIPLEWALK_DATA_DIR "/karate.txt");
    EXPECT_EQ(g.node_count(), 34u);
    EXPECT_EQ(g.edge_count(), 78u);
}

TEST(HomogeneousGraph, DegreeSumIsTwiceEdgeCount) {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 20; ++round) {
        auto g = oracle::random_graph(rng, 40, 0.15);
        std::size_t sum = 0;
        for (NodeId v = 0; v < g.node_count(); ++v) {
            sum += g.degree(v);
            for (EdgeId e : g.incident_edges(v)) EXPECT_TRUE(g.edge(e).touches(v));
        }
        EXPECT_EQ(sum, 2 * g.edge_count());
    }
}

TEST(HomogeneousGraph, RoundTrip) {
    auto g = edges("5 7\n7 9\n9 5\n1 5\n");
    std::ostringstream out;
    write_edge_list(out, g);
    auto h = edges(out.str());
    EXPECT_EQ(h.nodes().names(), g.nodes().names());
    ASSERT_EQ(h.edge_count(), g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        EXPECT_EQ(h.edge(e).first, g.edge(e).first);
        EXPECT_EQ(h.edge(e).second, g.edge(e).second);
    }
}

TEST(Labels, RepeatedTokensAccumulate) {
    std::istringstream in("a\tML\nb\tDB\na\tAI\n# c\tX\n");
    auto labels = parse_labels(in);
    ASSERT_EQ(labels.size(), 2u);
    EXPECT_EQ(labels["a"], (std::set<std::string>{"AI", "ML"}));
    std::istringstream bad("a ML\n");
    EXPECT_THROW(parse_labels(bad), ParseError);
}
