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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "triplewalk/labels.hpp"
#include "triplewalk/skipgram.hpp"
#include "triplewalk/walks.hpp"
#include "triplewalk/weighting.hpp"

namespace triplewalk {

enum class InputKind { knowledge_graph, homogeneous };
enum class WeightingKind { relatedness, centrality, uniform };
/// `automatic` evaluates whatever labels are available: both tasks when a
/// label file is given or the input is homogeneous, nothing otherwise.
enum class EvalTask { automatic, none, classify, cluster, all };

struct PipelineConfig {
    std::filesystem::path input;
    InputKind kind = InputKind::knowledge_graph;
    /// Unset: relatedness for knowledge graphs, centrality otherwise.
    std::optional<WeightingKind> weighting;
    BlendCoefficients blend;
    WalkConfig walks;
    /// dimension 0 selects 128 for knowledge graphs and 32 otherwise.
    TrainConfig train{.dimension = 0};
    EvalTask task = EvalTask::automatic;
    std::filesystem::path labels;
    std::filesystem::path rules;
    std::vector<double> train_fractions{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::size_t eval_runs = 10;
    /// k for clustering; unset means the number of classes.
    std::optional<std::size_t> clusters;
    std::filesystem::path out = "triplewalk-out";
    bool resume = false;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::size_t centrality_max_nodes = 10000;
    std::optional<std::size_t> hub_threshold;

    WeightingKind effective_weighting() const;
    std::size_t effective_dimension() const;
    WalkConfig effective_walks() const;
    TrainConfig effective_train() const;
    /// Throws ConfigError for invalid values or when the weighting does not
    /// fit the input kind.
    void validate() const;
};

/// Sets one option from its textual form. Keys are the long flag names
/// without dashes (`walk-length`, `dim`, ...). `kind` also accepts the
/// weighting names.
void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value);
/// `key = value` lines; '#' starts a comment.
void apply_config_file(PipelineConfig& config, std::istream& in);
void apply_config_file(PipelineConfig& config, const std::filesystem::path& path);
/// Reads TRIPLEWALK_THREADS when set.
void apply_environment(PipelineConfig& config);

/// Artifact locations inside an output directory.
struct ArtifactPaths {
    explicit ArtifactPaths(const std::filesystem::path& out);

    std::filesystem::path line_graph;
    std::filesystem::path line_nodes;
    std::filesystem::path weighted_line_graph;
    std::filesystem::path relatedness;
    std::filesystem::path centrality;
    std::filesystem::path corpus;
    std::filesystem::path embeddings;
    std::filesystem::path metrics;
    std::filesystem::path micro_curve;
    std::filesystem::path macro_curve;
};

/// `task<TAB>dataset<TAB>train_fraction<TAB>metric<TAB>value`.
struct MetricRow {
    std::string task;
    std::string dataset;
    std::optional<double> train_fraction;
    std::string metric;
    double value;
};

void stage_build_line_graph(const PipelineConfig& config, std::ostream& log);
void stage_weigh(const PipelineConfig& config, std::ostream& log);
void stage_walk(const PipelineConfig& config, std::ostream& log);
void stage_embed(const PipelineConfig& config, std::ostream& log);
std::vector<MetricRow> stage_eval_classify(const PipelineConfig& config, std::ostream& log);
std::vector<MetricRow> stage_eval_cluster(const PipelineConfig& config, std::ostream& log);

void write_metrics(const std::filesystem::path& path, const std::vector<MetricRow>& rows);
/// gnuplot-style `train_fraction value` curves for the micro and macro F1 rows.
void write_curves(const ArtifactPaths& paths, const std::vector<MetricRow>& rows);

/// Every stage in order, then evaluation; metrics.tsv is always written.
/// With `resume`, stages whose artifact already exists are skipped.
std::vector<MetricRow> run_pipeline(const PipelineConfig& config, std::ostream& log);

/// Line-node labels used for evaluation, derived from the configured input
/// graph, label file and rules, or read per token when there is no input.
LabeledDataset evaluation_dataset(const PipelineConfig& config, std::span<const std::string> tokens);

}  // namespace triplewalk
