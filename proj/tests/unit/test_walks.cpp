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

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "triplewalk/alias_table.hpp"
#include "triplewalk/error.hpp"
#include "triplewalk/line_graph.hpp"
#include "triplewalk/walks.hpp"
#include "triplewalk/weighting.hpp"

using namespace triplewalk;

TEST(AliasTable, MatchesTheWeights) {
    std::vector<double> w{5, 0, 1, 3, 1};
    AliasTable table(w);
    Rng rng(1);
    std::vector<double> freq(w.size(), 0.0);
    const int draws = 200000;
    for (int i = 0; i < draws; ++i) freq[table.sample(rng)] += 1;
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(freq[i] / draws, w[i] / 10.0, 0.005);
    EXPECT_EQ(freq[1], 0.0);
}

TEST(AliasTable, RejectsBadWeights) {
    EXPECT_THROW(AliasTable(std::vector<double>{}), Error);
    EXPECT_THROW(AliasTable(std::vector<double>{1, -1}), Error);
    EXPECT_THROW(AliasTable(std::vector<double>{0, 0}), Error);
    EXPECT_THROW(AliasTable(std::vector<double>{1, NAN}), Error);
}

TEST(SampleNext, IsolatedAndSingleNeighbour) {
    LineGraph lg(LineSource::knowledge_graph, 3, {{0, 1}});
    WalkSampler sampler(lg);
    Rng rng(3);
    EXPECT_FALSE(sampler.sample_next(2, rng).has_value());
    for (int i = 0; i < 100; ++i) EXPECT_EQ(sampler.sample_next(0, rng), 1u);
}

TEST(SampleNext, FollowsEdgeWeights) {
    LineGraph lg(LineSource::knowledge_graph, 3, {{0, 1}, {0, 2}});
    lg.set_weights({0.75, 0.25});
    WalkSampler sampler(lg);
    Rng rng(17);
    int ones = 0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) ones += *sampler.sample_next(0, rng) == 1;
    EXPECT_NEAR(ones / double(draws), 0.75, 0.02);
}

TEST(SampleNext, ZeroTotalWeightIsRejected) {
    LineGraph lg(LineSource::knowledge_graph, 2, {{0, 1}});
    lg.set_weights({0.0});
    EXPECT_THROW(WalkSampler{lg}, Error);
}

TEST(GenerateWalks, SingleNode) {
    LineGraph lg(LineSource::knowledge_graph, 1, {});
    auto corpus = generate_walks(lg, {.walks_per_node = 2, .max_length = 5});
    ASSERT_EQ(corpus.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        ASSERT_EQ(corpus.walk(i).size(), 1u);
        EXPECT_EQ(corpus.walk(i)[0], 0u);
    }
}

TEST(GenerateWalks, TwoNodesAlternate) {
    LineGraph lg(LineSource::knowledge_graph, 2, {{0, 1}});
    auto corpus = generate_walks(lg, {.walks_per_node = 3, .max_length = 3});
    ASSERT_EQ(corpus.size(), 6u);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        auto w = corpus.walk(i);
        ASSERT_EQ(w.size(), 3u);
        EXPECT_EQ(w[0], i % 2);
        EXPECT_NE(w[0], w[1]);
        EXPECT_EQ(w[0], w[2]);
    }
}

TEST(GenerateWalks, KarateCorpusShape) {
    auto g = load_edge_list(TRIPLEWALK_DATA_DIR "/karate.txt");
    auto lg = floor_weights(weight_homogeneous_line_graph(build_line_graph(g), g, current_flow_betweenness(g), {}));
    WalkConfig cfg;
    auto corpus = generate_walks(lg, cfg);
    ASSERT_EQ(corpus.size(), 780u);
    EXPECT_EQ(corpus.token_count(), 780u * 100u);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        auto w = corpus.walk(i);
        ASSERT_EQ(w[0], i % 78);
        for (std::size_t k = 1; k < w.size(); ++k) {
            bool adjacent = false;
            for (auto nb : lg.neighbors(w[k - 1])) {
                if (nb.node == w[k]) adjacent = lg.weight(nb.edge) > 0;
            }
            ASSERT_TRUE(adjacent);
        }
    }
}

TEST(GenerateWalks, ShortWalksOnlyAtSinks) {
    // node 3 is isolated; everything else is a path
    LineGraph lg(LineSource::knowledge_graph, 4, {{0, 1}, {1, 2}});
    auto corpus = generate_walks(lg, {.walks_per_node = 4, .max_length = 7});
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        EXPECT_EQ(corpus.walk(i).size(), corpus.walk(i)[0] == 3 ? 1u : 7u);
    }
}

TEST(GenerateWalks, ReproducibleAndThreadIndependent) {
    std::mt19937_64 rng(9);
    auto g = oracle::random_connected_graph(rng, 40, 40);
    auto lg = build_line_graph(g);
    std::vector<double> w(lg.edge_count());
    std::uniform_real_distribution<double> u(0.01, 1);
    for (double& x : w) x = u(rng);
    lg.set_weights(w);
    WalkConfig cfg{.walks_per_node = 3, .max_length = 20, .seed = 7};
    auto a = generate_walks(lg, cfg);
    auto b = generate_walks(lg, cfg);
    cfg.threads = 4;
    auto c = generate_walks(lg, cfg);
    EXPECT_TRUE(a == b);
    EXPECT_TRUE(a == c);
    cfg.seed = 8;
    EXPECT_FALSE(a == generate_walks(lg, cfg));
}

TEST(GenerateWalks, UniformCycleVisitsNodesUniformly) {
    const std::size_t n = 10;
    std::vector<LineEdge> edges;
    for (LineNodeId v = 0; v < n; ++v) edges.push_back({v, static_cast<LineNodeId>((v + 1) % n)});
    LineGraph lg(LineSource::homogeneous, n, edges);
    auto corpus = generate_walks(lg, {.walks_per_node = 1, .max_length = 200000, .seed = 3});
    std::vector<double> visits(n, 0.0);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        for (auto v : corpus.walk(i)) visits[v] += 1;
    }
    ASSERT_GE(corpus.token_count(), 1000000u);
    const double expected = static_cast<double>(corpus.token_count()) / n;
    for (double x : visits) EXPECT_NEAR(x / expected, 1.0, 0.02);
}

TEST(WalkConfig, Validation) {
    EXPECT_THROW((WalkConfig{.walks_per_node = 0}.validate()), ConfigError);
    EXPECT_THROW((WalkConfig{.max_length = 0}.validate()), ConfigError);
    EXPECT_THROW((WalkConfig{.threads = 0}.validate()), ConfigError);
}

TEST(CorpusFile, RoundTrip) {
    WalkCorpus corpus;
    corpus.add(std::vector<LineNodeId>{0, 1, 0});
    corpus.add(std::vector<LineNodeId>{2});
    std::stringstream io;
    write_corpus(io, corpus);
    EXPECT_EQ(io.str(), "0 1 0\n2\n");
    EXPECT_TRUE(read_corpus(io) == corpus);
    std::istringstream bad("0 x\n");
    EXPECT_THROW(read_corpus(bad), ParseError);
}
