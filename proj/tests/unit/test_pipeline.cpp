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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <unistd.h>
#include <sstream>

#include <gtest/gtest.h>

#include "triplewalk/error.hpp"
#include "triplewalk/line_graph.hpp"
#include "triplewalk/pipeline.hpp"

using namespace triplewalk;
namespace fs = std::filesystem;

namespace {

class PipelineTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("triplewalk-test-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) +
                "-" + std::to_string(::getpid()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write(const std::string& name, const std::string& text) {
        fs::path p = dir_ / name;
        std::ofstream(p, std::ios::binary) << text;
        return p;
    }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    fs::path dir_;
    std::ostringstream log_;
};

}  // namespace

TEST(PipelineConfig, SettingsParse) {
    PipelineConfig c;
    apply_setting(c, "kind", "homogeneous");
    apply_setting(c, "walk-length", "40");
    apply_setting(c, "walk_length", "41");
    apply_setting(c, "train-fraction", "0.1, 0.5");
    apply_setting(c, "alpha", "0.2");
    apply_setting(c, "kind", "uniform");
    EXPECT_EQ(c.kind, InputKind::homogeneous);
    EXPECT_EQ(c.walks.max_length, 41u);
    EXPECT_EQ(c.train_fractions, (std::vector<double>{0.1, 0.5}));
    EXPECT_EQ(c.blend.alpha, 0.2);
    EXPECT_EQ(c.effective_weighting(), WeightingKind::uniform);
    EXPECT_THROW(apply_setting(c, "walks", "ten"), ConfigError);
    EXPECT_THROW(apply_setting(c, "colour", "red"), ConfigError);
    EXPECT_THROW(apply_setting(c, "weighting", "homogeneous"), ConfigError);
}

TEST(PipelineConfig, DefaultsFollowTheInputKind) {
    PipelineConfig kg;
    EXPECT_EQ(kg.effective_weighting(), WeightingKind::relatedness);
    EXPECT_EQ(kg.effective_dimension(), 128u);
    EXPECT_EQ(kg.walks.walks_per_node, 10u);
    EXPECT_EQ(kg.walks.max_length, 100u);
    EXPECT_EQ(kg.train.window, 10u);
    EXPECT_EQ(kg.train.negatives, 10u);
    PipelineConfig h;
    h.kind = InputKind::homogeneous;
    EXPECT_EQ(h.effective_weighting(), WeightingKind::centrality);
    EXPECT_EQ(h.effective_dimension(), 32u);
}

TEST(PipelineConfig, Compatibility) {
    PipelineConfig c;
    c.kind = InputKind::homogeneous;
    c.weighting = WeightingKind::relatedness;
    EXPECT_THROW(c.validate(), ConfigError);
    c.kind = InputKind::knowledge_graph;
    c.weighting = WeightingKind::centrality;
    EXPECT_THROW(c.validate(), ConfigError);
    c.weighting = WeightingKind::uniform;
    EXPECT_NO_THROW(c.validate());
    c.blend = {0.5, 0.5, 0.5};
    EXPECT_THROW(c.validate(), ConfigError);
}

TEST(PipelineConfig, ConfigFileAndPrecedence) {
    std::istringstream file("# settings\nwalks = 3\nseed=9\n\nthreads = 2\n");
    PipelineConfig c;
    ::setenv("TRIPLEWALK_THREADS", "6", 1);
    apply_environment(c);
    EXPECT_EQ(c.threads, 6u);
    apply_config_file(c, file);
    EXPECT_EQ(c.threads, 2u);
    apply_setting(c, "threads", "1");
    EXPECT_EQ(c.threads, 1u);
    EXPECT_EQ(c.walks.walks_per_node, 3u);
    EXPECT_EQ(c.seed, 9u);
    ::unsetenv("TRIPLEWALK_THREADS");
    std::istringstream bad("walks 3\n");
    EXPECT_THROW(apply_config_file(c, bad), ParseError);
}

TEST_F(PipelineTest, ToyKnowledgeGraphProducesEveryArtifact) {
    PipelineConfig c;
    c.input = write("toy.tsv", "a\tp\tb\nb\tq\tc\nc\tp\ta\n");
    c.out = dir_ / "out";
    c.walks.max_length = 10;
    c.train.dimension = 8;
    run_pipeline(c, log_);
    ArtifactPaths paths(c.out);
    for (const auto& p : {paths.line_graph, paths.line_nodes, paths.weighted_line_graph, paths.relatedness,
                          paths.corpus, paths.embeddings, paths.metrics}) {
        EXPECT_TRUE(fs::exists(p)) << p;
    }
    EXPECT_EQ(slurp(paths.metrics), "task\tdataset\ttrain_fraction\tmetric\tvalue\n");
    auto lg = load_line_graph(paths.weighted_line_graph);
    EXPECT_EQ(lg.edge_count(), 3u);
    for (double w : lg.weights()) EXPECT_GE(w, kWeightFloor);
}

TEST_F(PipelineTest, IncompatibleWeightingFailsBeforeAnyWork) {
    PipelineConfig c;
    c.kind = InputKind::homogeneous;
    c.weighting = WeightingKind::relatedness;
    c.input = TRIPLEWALK_DATA_DIR "/karate.txt";
    c.out = dir_ / "never";
    EXPECT_THROW(run_pipeline(c, log_), ConfigError);
    EXPECT_FALSE(fs::exists(c.out));
}

TEST_F(PipelineTest, KarateEndToEnd) {
    PipelineConfig c;
    c.kind = InputKind::homogeneous;
    c.input = TRIPLEWALK_DATA_DIR "/karate.txt";
    c.out = dir_ / "karate";
    c.train_fractions = {0.5};
    c.eval_runs = 2;
    auto rows = run_pipeline(c, log_);
    ArtifactPaths paths(c.out);
    auto emb = load_embeddings(paths.embeddings);
    EXPECT_EQ(emb.tokens.size(), 78u);
    EXPECT_EQ(emb.matrix.dim, 32u);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[2].metric, "nmi");
    EXPECT_FALSE(rows[2].train_fraction.has_value());
    EXPECT_TRUE(fs::exists(paths.centrality));
    EXPECT_TRUE(fs::exists(paths.micro_curve));
    auto metrics = slurp(paths.metrics);
    EXPECT_NE(metrics.find("classify\tkarate\t0.5\tmicro_f1\t"), std::string::npos);
    EXPECT_NE(metrics.find("cluster\tkarate\tNA\tnmi\t"), std::string::npos);
}

TEST_F(PipelineTest, UniformWeighingGivesUnitWeights) {
    PipelineConfig c;
    c.input = write("kg.tsv", "a\tp\tb\nb\tq\tc\nc\tr\td\na\tr\td\n");
    c.out = dir_ / "u";
    stage_build_line_graph(c, log_);
    PipelineConfig w;
    w.out = c.out;
    apply_setting(w, "kind", "uniform");
    stage_weigh(w, log_);
    auto lg = load_line_graph(ArtifactPaths(c.out).weighted_line_graph);
    ASSERT_GT(lg.edge_count(), 0u);
    for (double x : lg.weights()) EXPECT_EQ(x, 1.0);
}

TEST_F(PipelineTest, ClusterTwoBlobEmbeddings) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0, 0.1);
    std::ostringstream emb, labels;
    emb << "40 3\n";
    for (int i = 0; i < 40; ++i) {
        const double shift = i < 20 ? 0.0 : 5.0;
        emb << "t" << i << ' ' << n(rng) + shift << ' ' << n(rng) << ' ' << n(rng) - shift << '\n';
        labels << "t" << i << '\t' << (i < 20 ? "left" : "right") << '\n';
    }
    PipelineConfig c;
    c.out = dir_ / "blobs";
    fs::create_directories(c.out);
    write("blobs/embeddings.txt", emb.str());
    c.labels = write("labels.tsv", labels.str());
    c.clusters = 2;
    auto rows = stage_eval_cluster(c, log_);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].value, 1.0);
}

TEST_F(PipelineTest, WalkStageIsReproducible) {
    PipelineConfig c;
    c.input = write("kg.tsv", "a\tp\tb\nb\tq\tc\nc\tr\td\na\tr\td\nd\tp\te\n");
    c.out = dir_ / "w";
    c.seed = 7;
    stage_build_line_graph(c, log_);
    stage_weigh(c, log_);
    stage_walk(c, log_);
    const std::string first = slurp(ArtifactPaths(c.out).corpus);
    stage_walk(c, log_);
    EXPECT_EQ(slurp(ArtifactPaths(c.out).corpus), first);
    c.seed = 8;
    stage_walk(c, log_);
    EXPECT_NE(slurp(ArtifactPaths(c.out).corpus), first);
}

TEST_F(PipelineTest, MissingUpstreamArtifactNamesTheStage) {
    PipelineConfig c;
    c.out = dir_ / "empty";
    auto expect_stage = [&](auto&& fn, const std::string& stage) {
        try {
            fn(c, log_);
            FAIL() << "expected an error";
        } catch (const Error& e) {
            EXPECT_NE(std::string(e.what()).find(stage), std::string::npos) << e.what();
        }
    };
    expect_stage(stage_weigh, "build-line-graph");
    expect_stage(stage_walk, "weigh");
    expect_stage(stage_embed, "walk");
    expect_stage(stage_eval_classify, "embed");
    expect_stage(stage_eval_cluster, "embed");
}

TEST_F(PipelineTest, ResumeSkipsFinishedStages) {
    PipelineConfig c;
    c.input = write("toy.tsv", "a\tp\tb\nb\tq\tc\nc\tp\ta\n");
    c.out = dir_ / "r";
    c.walks.max_length = 5;
    c.train.dimension = 4;
    run_pipeline(c, log_);
    ArtifactPaths paths(c.out);
    write("r/walks.txt", "0 1\n");
    c.resume = true;
    run_pipeline(c, log_);
    EXPECT_EQ(slurp(paths.corpus), "0 1\n");
    EXPECT_NE(log_.str().find("[walk] skipped"), std::string::npos);
}

TEST_F(PipelineTest, StageValidatesSourceKind) {
    PipelineConfig c;
    c.input = write("kg.tsv", "a\tp\tb\nb\tq\tc\n");
    c.out = dir_ / "k";
    stage_build_line_graph(c, log_);
    PipelineConfig h = c;
    h.kind = InputKind::homogeneous;
    h.input = TRIPLEWALK_DATA_DIR "/karate.txt";
    EXPECT_THROW(stage_weigh(h, log_), ConfigError);
}

TEST_F(PipelineTest, KnowledgeGraphEvaluationUsesPropagatedLabels) {
    // authors carry topics; a rule pushes them onto papers; triples are labelled
    std::ostringstream kg, labels;
    for (int i = 0; i < 30; ++i) {
        const char* topic = i % 2 ? "DB" : "ML";
        kg << "author" << i << "\twrote\tpaper" << i << "\n";
        kg << "paper" << i << "\tin\tvenue" << topic << "\n";
        kg << "author" << i << "\tworksOn\ttopic" << topic << "\n";
        labels << "author" << i << '\t' << topic << '\n';
    }
    PipelineConfig c;
    c.input = write("dblp.tsv", kg.str());
    c.labels = write("labels.tsv", labels.str());
    c.rules = write("rules.tsv", "wrote\tforward\n");
    c.out = dir_ / "dblp";
    c.train.dimension = 16;
    c.train_fractions = {0.5};
    c.eval_runs = 2;
    c.clusters = 2;
    auto rows = run_pipeline(c, log_);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_GT(rows[0].value, 0.9);
    EXPECT_EQ(rows[0].dataset, "dblp");
}
