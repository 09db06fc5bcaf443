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

#include "triplewalk/pipeline.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <unordered_map>

#include <Eigen/Dense>

#include "triplewalk/classify.hpp"
#include "triplewalk/cluster.hpp"
#include "triplewalk/community.hpp"
#include "triplewalk/error.hpp"
#include "triplewalk/graph.hpp"
#include "triplewalk/line_graph.hpp"
#include "triplewalk/random.hpp"
#include "triplewalk/text.hpp"

namespace triplewalk {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key));
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
    if (value == "0" || value == "false" || value == "no" || value == "off") return false;
    throw ConfigError("invalid boolean '" + std::string(value) + "' for " + std::string(key));
}

std::vector<double> parse_fractions(std::string_view value) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        auto comma = value.find(',', start);
        if (comma == std::string_view::npos) comma = value.size();
        out.push_back(parse_number<double>("train-fraction", trim(value.substr(start, comma - start))));
        start = comma + 1;
    }
    return out;
}

const char* weighting_name(WeightingKind w) {
    switch (w) {
        case WeightingKind::relatedness: return "relatedness";
        case WeightingKind::centrality: return "centrality";
        case WeightingKind::uniform: return "uniform";
    }
    return "?";
}

void require(const fs::path& artifact, const char* stage) {
    if (!fs::exists(artifact)) {
        throw Error("missing " + artifact.string() + "; run the " + std::string(stage) + " stage first");
    }
}

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

void close_output(std::ofstream& out, const fs::path& path) {
    out.close();
    if (!out) throw Error("failed writing " + path.string());
}

struct InputGraph {
    std::optional<KnowledgeGraph> kg;
    std::optional<HomogeneousGraph> homogeneous;
};

InputGraph load_input(const PipelineConfig& config) {
    if (config.input.empty()) throw ConfigError("no input graph given (--input)");
    InputGraph g;
    if (config.kind == InputKind::knowledge_graph) {
        g.kg = load_triples(config.input);
    } else {
        g.homogeneous = load_edge_list(config.input);
    }
    return g;
}

std::vector<std::string> input_tokens(const InputGraph& g) {
    return g.kg ? line_node_tokens(*g.kg) : line_node_tokens(*g.homogeneous);
}

std::size_t input_line_nodes(const InputGraph& g) {
    return g.kg ? g.kg->triple_count() : g.homogeneous->edge_count();
}

struct EvalInputs {
    Eigen::MatrixXd features;
    std::vector<std::uint32_t> classes;
    std::size_t class_count = 0;
};

EvalInputs evaluation_inputs(const PipelineConfig& config, std::ostream& log) {
    ArtifactPaths paths(config.out);
    require(paths.embeddings, "embed");
    LoadedEmbeddings emb = load_embeddings(paths.embeddings);
    LabeledDataset data = evaluation_dataset(config, emb.tokens);
    if (data.size() == 0) throw Error("no labelled line nodes to evaluate");
    log << "evaluating " << data.size() << " labelled line nodes in " << data.class_count() << " classes\n";

    EvalInputs in;
    const std::size_t dim = emb.matrix.dim;
    in.features.resize(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < data.size(); ++r) {
        auto row = emb.matrix.row(data.nodes[r]);
        for (std::size_t c = 0; c < dim; ++c) {
            in.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
        }
    }
    in.classes = std::move(data.classes);
    in.class_count = data.class_count();
    return in;
}

std::string dataset_name(const PipelineConfig& config) {
    if (!config.input.empty()) return config.input.stem().string();
    if (!config.labels.empty()) return config.labels.stem().string();
    return "embeddings";
}

bool wants(EvalTask task, EvalTask which, const PipelineConfig& config) {
    if (task == EvalTask::automatic) {
        return !config.labels.empty() || config.kind == InputKind::homogeneous;
    }
    return task == EvalTask::all || task == which;
}

}  // namespace

WeightingKind PipelineConfig::effective_weighting() const {
    if (weighting) return *weighting;
    return kind == InputKind::knowledge_graph ? WeightingKind::relatedness : WeightingKind::centrality;
}

std::size_t PipelineConfig::effective_dimension() const {
    if (train.dimension != 0) return train.dimension;
    return kind == InputKind::knowledge_graph ? 128 : 32;
}

WalkConfig PipelineConfig::effective_walks() const {
    WalkConfig w = walks;
    w.seed = seed;
    w.threads = threads;
    return w;
}

TrainConfig PipelineConfig::effective_train() const {
    TrainConfig t = train;
    t.dimension = effective_dimension();
    t.seed = seed;
    t.threads = threads;
    return t;
}

void PipelineConfig::validate() const {
    const WeightingKind w = effective_weighting();
    if (w == WeightingKind::relatedness && kind != InputKind::knowledge_graph) {
        throw ConfigError("relatedness weighting requires a knowledge-graph input");
    }
    if (w == WeightingKind::centrality && kind != InputKind::homogeneous) {
        throw ConfigError("centrality weighting requires a homogeneous input");
    }
    blend.validate();
    effective_walks().validate();
    effective_train().validate();
    if (threads == 0) throw ConfigError("threads must be >= 1");
    if (eval_runs == 0) throw ConfigError("runs must be >= 1");
    if (train_fractions.empty()) throw ConfigError("at least one train fraction is required");
    for (double f : train_fractions) {
        if (!(f > 0.0 && f < 1.0)) throw ConfigError("train fractions must lie in (0, 1)");
    }
    if (clusters && *clusters == 0) throw ConfigError("k must be >= 1");
    if (out.empty()) throw ConfigError("an output directory is required");
}

void apply_setting(PipelineConfig& config, std::string_view raw_key, std::string_view raw_value) {
    std::string key = trim(raw_key);
    for (char& c : key) {
        if (c == '_') c = '-';
    }
    const std::string value = trim(raw_value);

    if (key == "input") {
        config.input = value;
    } else if (key == "kind" || key == "weighting") {
        if (key == "kind" && value == "kg") {
            config.kind = InputKind::knowledge_graph;
        } else if (key == "kind" && value == "homogeneous") {
            config.kind = InputKind::homogeneous;
        } else if (value == "relatedness") {
            config.weighting = WeightingKind::relatedness;
        } else if (value == "centrality") {
            config.weighting = WeightingKind::centrality;
        } else if (value == "uniform") {
            config.weighting = WeightingKind::uniform;
        } else {
            throw ConfigError("invalid value '" + value + "' for " + key);
        }
    } else if (key == "alpha") {
        config.blend.alpha = parse_number<double>(key, value);
    } else if (key == "beta") {
        config.blend.beta = parse_number<double>(key, value);
    } else if (key == "gamma") {
        config.blend.gamma = parse_number<double>(key, value);
    } else if (key == "walks") {
        config.walks.walks_per_node = parse_number<std::size_t>(key, value);
    } else if (key == "walk-length") {
        config.walks.max_length = parse_number<std::size_t>(key, value);
    } else if (key == "window") {
        config.train.window = parse_number<std::size_t>(key, value);
    } else if (key == "dim") {
        config.train.dimension = parse_number<std::size_t>(key, value);
        if (config.train.dimension == 0) throw ConfigError("dim must be >= 1");
    } else if (key == "negatives") {
        config.train.negatives = parse_number<std::size_t>(key, value);
    } else if (key == "epochs") {
        config.train.epochs = parse_number<std::size_t>(key, value);
    } else if (key == "learning-rate") {
        config.train.learning_rate = parse_number<double>(key, value);
    } else if (key == "seed") {
        config.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "threads") {
        config.threads = parse_number<unsigned>(key, value);
    } else if (key == "labels") {
        config.labels = value;
    } else if (key == "rules") {
        config.rules = value;
    } else if (key == "train-fraction") {
        config.train_fractions = parse_fractions(value);
    } else if (key == "runs") {
        config.eval_runs = parse_number<std::size_t>(key, value);
    } else if (key == "k") {
        config.clusters = parse_number<std::size_t>(key, value);
    } else if (key == "task") {
        if (value == "auto") config.task = EvalTask::automatic;
        else if (value == "none") config.task = EvalTask::none;
        else if (value == "classify") config.task = EvalTask::classify;
        else if (value == "cluster") config.task = EvalTask::cluster;
        else if (value == "all") config.task = EvalTask::all;
        else throw ConfigError("invalid value '" + value + "' for task");
    } else if (key == "out") {
        config.out = value;
    } else if (key == "resume") {
        config.resume = parse_bool(key, value);
    } else if (key == "max-cfb-nodes") {
        config.centrality_max_nodes = parse_number<std::size_t>(key, value);
    } else if (key == "hub-threshold") {
        config.hub_threshold = parse_number<std::size_t>(key, value);
    } else {
        throw ConfigError("unknown setting '" + key + "'");
    }
}

void apply_config_file(PipelineConfig& config, std::istream& in) {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError(number, "expected 'key = value'");
        try {
            apply_setting(config, std::string_view(t).substr(0, eq), std::string_view(t).substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ParseError(number, e.what());
        }
    }
}

void apply_config_file(PipelineConfig& config, const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config " + path.string());
    apply_config_file(config, in);
}

void apply_environment(PipelineConfig& config) {
    if (const char* env = std::getenv("TRIPLEWALK_THREADS"); env && *env) {
        apply_setting(config, "threads", env);
    }
}

ArtifactPaths::ArtifactPaths(const fs::path& out)
    : line_graph(out / "line_graph.tsv"),
      line_nodes(out / "line_nodes.tsv"),
      weighted_line_graph(out / "weighted_line_graph.tsv"),
      relatedness(out / "relatedness.tsv"),
      centrality(out / "centrality.tsv"),
      corpus(out / "walks.txt"),
      embeddings(out / "embeddings.txt"),
      metrics(out / "metrics.tsv"),
      micro_curve(out / "micro_f1.dat"),
      macro_curve(out / "macro_f1.dat") {}

void stage_build_line_graph(const PipelineConfig& config, std::ostream& log) {
    ArtifactPaths paths(config.out);
    InputGraph g = load_input(config);
    fs::create_directories(config.out);
    if (g.kg && config.hub_threshold) {
        auto hubs = hub_entities(*g.kg, *config.hub_threshold);
        for (EntityId h : hubs) {
            log << "warning: hub entity " << g.kg->entities().name(h) << " appears in "
                << g.kg->incidence(h).size() << " triples\n";
        }
    }
    LineGraph lg = g.kg ? build_triple_line_graph(*g.kg) : build_line_graph(*g.homogeneous);
    save_line_graph(paths.line_graph, lg);
    auto out = open_output(paths.line_nodes);
    if (g.kg) write_node_map(out, *g.kg);
    else write_node_map(out, *g.homogeneous);
    close_output(out, paths.line_nodes);
    log << "line graph: " << lg.node_count() << " nodes, " << lg.edge_count() << " edges\n";
}

void stage_weigh(const PipelineConfig& config, std::ostream& log) {
    ArtifactPaths paths(config.out);
    require(paths.line_graph, "build-line-graph");
    LineGraph lg = load_line_graph(paths.line_graph);
    const WeightingKind w = config.effective_weighting();

    if (w != WeightingKind::uniform) {
        const auto expected =
            config.kind == InputKind::knowledge_graph ? LineSource::knowledge_graph : LineSource::homogeneous;
        if (lg.source() != expected) {
            throw ConfigError("line graph source does not match the configured input kind");
        }
        InputGraph g = load_input(config);
        if (input_line_nodes(g) != lg.node_count()) {
            throw Error("line graph has " + std::to_string(lg.node_count()) + " nodes but the input has " +
                        std::to_string(input_line_nodes(g)) + "; rebuild it");
        }
        if (w == WeightingKind::relatedness) {
            RelatednessMatrix rel = predicate_relatedness(predicate_cooccurrence(*g.kg, lg));
            lg = weight_kg_line_graph(std::move(lg), *g.kg, rel);
            auto out = open_output(paths.relatedness);
            write_relatedness(out, *g.kg, rel);
            close_output(out, paths.relatedness);
        } else {
            CentralityOptions opts{config.centrality_max_nodes, config.threads};
            CentralityVector cb = current_flow_betweenness(*g.homogeneous, opts);
            lg = weight_homogeneous_line_graph(std::move(lg), *g.homogeneous, cb, config.blend);
            auto out = open_output(paths.centrality);
            write_centrality(out, *g.homogeneous, cb);
            close_output(out, paths.centrality);
        }
        lg = floor_weights(std::move(lg));
    } else {
        lg.set_weights(std::vector<double>(lg.edge_count(), 1.0));
    }
    save_line_graph(paths.weighted_line_graph, lg);
    log << "weighted " << lg.edge_count() << " edges (" << weighting_name(w) << ")\n";
}

void stage_walk(const PipelineConfig& config, std::ostream& log) {
    ArtifactPaths paths(config.out);
    require(paths.weighted_line_graph, "weigh");
    LineGraph lg = load_line_graph(paths.weighted_line_graph);
    WalkCorpus corpus = generate_walks(lg, config.effective_walks());
    save_corpus(paths.corpus, corpus);
    log << "walks: " << corpus.size() << " walks, " << corpus.token_count() << " tokens\n";
}

void stage_embed(const PipelineConfig& config, std::ostream& log) {
    ArtifactPaths paths(config.out);
    require(paths.corpus, "walk");
    require(paths.line_nodes, "build-line-graph");
    std::vector<std::string> tokens = load_node_map(paths.line_nodes);
    WalkCorpus corpus = load_corpus(paths.corpus);
    if (corpus.node_bound() > tokens.size()) {
        throw Error("walk corpus references line nodes beyond " + paths.line_nodes.string());
    }
    EmbeddingMatrix e = train(corpus, tokens.size(), config.effective_train());
    save_embeddings(paths.embeddings, e, tokens);
    log << "embeddings: " << e.rows << " x " << e.dim << "\n";
}

LabeledDataset evaluation_dataset(const PipelineConfig& config, std::span<const std::string> tokens) {
    if (config.input.empty()) {
        if (config.labels.empty()) throw ConfigError("evaluation needs --labels or --input");
        return label_tokens(tokens, load_labels(config.labels));
    }

    InputGraph g = load_input(config);
    std::vector<std::string> expected = input_tokens(g);
    std::unordered_map<std::string, LineNodeId> row;
    row.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) row.emplace(tokens[i], static_cast<LineNodeId>(i));

    LabeledDataset data;
    if (g.kg) {
        if (config.labels.empty()) throw ConfigError("knowledge-graph evaluation needs --labels");
        EntityLabels labels = entity_labels(*g.kg, load_labels(config.labels));
        if (!config.rules.empty()) {
            auto rules = resolve_rules(*g.kg, load_rules(config.rules));
            labels = propagate_labels(*g.kg, std::move(labels), rules);
        }
        data = label_triples(*g.kg, labels);
    } else if (!config.labels.empty()) {
        data = label_edges(*g.homogeneous, node_labels(*g.homogeneous, load_labels(config.labels)));
    } else {
        data = label_intra_community_edges(*g.homogeneous, detect_communities(*g.homogeneous));
    }

    for (LineNodeId& v : data.nodes) {
        auto it = row.find(expected[v]);
        if (it == row.end()) throw Error("no embedding for line node " + expected[v]);
        v = it->second;
    }
    return data;
}

std::vector<MetricRow> stage_eval_classify(const PipelineConfig& config, std::ostream& log) {
    EvalInputs in = evaluation_inputs(config, log);
    if (in.class_count < 2) throw Error("classification needs at least two classes");
    const std::string dataset = dataset_name(config);
    std::vector<MetricRow> rows;
    for (std::size_t f = 0; f < config.train_fractions.size(); ++f) {
        const double fraction = config.train_fractions[f];
        double micro = 0.0, macro = 0.0;
        for (std::size_t r = 0; r < config.eval_runs; ++r) {
            auto s = evaluate_classification(in.features, in.classes, fraction,
                                             derive_seed(config.seed, 0x636c617373 + f, r));
            micro += s.micro_f1;
            macro += s.macro_f1;
            if (!s.dropped_classes.empty()) {
                log << "warning: train fraction " << format_real(fraction) << ", run " << r << ": "
                    << s.dropped_classes.size() << " class(es) absent from the training split were dropped\n";
            }
        }
        const double runs = static_cast<double>(config.eval_runs);
        rows.push_back({"classify", dataset, fraction, "micro_f1", micro / runs});
        rows.push_back({"classify", dataset, fraction, "macro_f1", macro / runs});
        log << "train fraction " << format_real(fraction) << ": micro " << format_real(micro / runs)
            << ", macro " << format_real(macro / runs) << "\n";
    }
    return rows;
}

std::vector<MetricRow> stage_eval_cluster(const PipelineConfig& config, std::ostream& log) {
    EvalInputs in = evaluation_inputs(config, log);
    const std::size_t k = config.clusters.value_or(in.class_count);
    if (k == 0 || k > static_cast<std::size_t>(in.features.rows())) {
        throw ConfigError("k must lie in [1, number of labelled line nodes]");
    }
    double total = 0.0;
    for (std::size_t r = 0; r < config.eval_runs; ++r) {
        KMeansResult km = kmeans(in.features, k, derive_seed(config.seed, 0x6b6d65616e73, r));
        total += nmi(km.assignment, in.classes);
    }
    const double mean = total / static_cast<double>(config.eval_runs);
    log << "k-means (k=" << k << "): NMI " << format_real(mean) << "\n";
    return {MetricRow{"cluster", dataset_name(config), std::nullopt, "nmi", mean}};
}

void write_metrics(const fs::path& path, const std::vector<MetricRow>& rows) {
    auto out = open_output(path);
    out << "task\tdataset\ttrain_fraction\tmetric\tvalue\n";
    for (const auto& r : rows) {
        out << r.task << '\t' << r.dataset << '\t'
            << (r.train_fraction ? format_real(*r.train_fraction) : std::string("NA")) << '\t' << r.metric
            << '\t' << format_real(r.value) << '\n';
    }
    close_output(out, path);
}

void write_curves(const ArtifactPaths& paths, const std::vector<MetricRow>& rows) {
    for (const auto& [metric, path] : {std::pair{"micro_f1", paths.micro_curve}, {"macro_f1", paths.macro_curve}}) {
        std::map<double, double> curve;
        for (const auto& r : rows) {
            if (r.task == "classify" && r.metric == metric && r.train_fraction) curve[*r.train_fraction] = r.value;
        }
        if (curve.empty()) continue;
        auto out = open_output(path);
        out << "# train_fraction " << metric << "\n";
        for (auto [x, y] : curve) out << format_real(x) << ' ' << format_real(y) << '\n';
        close_output(out, path);
    }
}

std::vector<MetricRow> run_pipeline(const PipelineConfig& config, std::ostream& log) {
    config.validate();
    if (config.input.empty()) throw ConfigError("no input graph given (--input)");
    if (!fs::exists(config.input)) throw Error("input " + config.input.string() + " does not exist");
    ArtifactPaths paths(config.out);
    fs::create_directories(config.out);

    auto stage = [&](const char* name, const fs::path& artifact, auto&& fn) {
        if (config.resume && fs::exists(artifact)) {
            log << "[" << name << "] skipped, " << artifact.filename().string() << " exists\n";
            return;
        }
        log << "[" << name << "]\n";
        fn(config, log);
    };
    stage("build-line-graph", paths.line_nodes, stage_build_line_graph);
    stage("weigh", paths.weighted_line_graph, stage_weigh);
    stage("walk", paths.corpus, stage_walk);
    stage("embed", paths.embeddings, stage_embed);

    std::vector<MetricRow> rows;
    if (wants(config.task, EvalTask::classify, config)) {
        log << "[eval-classify]\n";
        auto r = stage_eval_classify(config, log);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    if (wants(config.task, EvalTask::cluster, config)) {
        log << "[eval-cluster]\n";
        auto r = stage_eval_cluster(config, log);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    write_metrics(paths.metrics, rows);
    write_curves(paths, rows);
    return rows;
}

}  // namespace triplewalk
