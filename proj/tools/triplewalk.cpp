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

// Command-line front end: one subcommand per pipeline stage plus `run`.

#include <deque>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "triplewalk/error.hpp"
#include "triplewalk/pipeline.hpp"
#include "triplewalk/synthetic.hpp"

namespace tw = triplewalk;

namespace {

struct Setting {
    const char* key;
    const char* help;
    bool flag = false;
};

constexpr Setting kSettings[] = {
    {"input", "input graph (TSV triples or edge list)"},
    {"kind", "input kind: kg | homogeneous (or a weighting name)"},
    {"weighting", "relatedness | centrality | uniform"},
    {"alpha", "centrality blend weight of the first outer endpoint"},
    {"beta", "centrality blend weight of the shared endpoint"},
    {"gamma", "centrality blend weight of the second outer endpoint"},
    {"walks", "walks per line node"},
    {"walk-length", "maximum walk length"},
    {"window", "skip-gram window size"},
    {"dim", "embedding dimension (default 128 for kg, 32 otherwise)"},
    {"negatives", "negative samples per positive pair"},
    {"epochs", "training epochs"},
    {"learning-rate", "initial learning rate"},
    {"seed", "master random seed"},
    {"threads", "worker threads; 1 is deterministic"},
    {"labels", "label file: token<TAB>label"},
    {"rules", "label propagation rules: predicate<TAB>forward|backward"},
    {"train-fraction", "comma-separated training fractions"},
    {"runs", "evaluation repetitions"},
    {"k", "number of clusters (default: number of classes)"},
    {"task", "evaluation in run: auto | none | classify | cluster | all"},
    {"out", "output directory"},
    {"max-cfb-nodes", "largest graph accepted by the exact centrality"},
    {"hub-threshold", "warn about entities in more triples than this"},
    {"resume", "skip stages whose artifacts exist", true},
};

/// Settings given on the command line, applied after the config file.
struct CommandOptions {
    std::string config;
    std::deque<std::pair<const char*, std::string>> values;
    std::vector<std::pair<const char*, CLI::Option*>> options;
    bool resume = false;
};

void add_settings(CLI::App& app, CommandOptions& cmd) {
    app.add_option("--config", cmd.config, "key = value configuration file");
    for (const Setting& s : kSettings) {
        CLI::Option* opt;
        if (s.flag) {
            opt = app.add_flag(std::string("--") + s.key, cmd.resume, s.help);
        } else {
            cmd.values.emplace_back(s.key, std::string());
            opt = app.add_option(std::string("--") + s.key, cmd.values.back().second, s.help);
        }
        cmd.options.emplace_back(s.key, opt);
    }
}

tw::PipelineConfig resolve(const CommandOptions& cmd) {
    tw::PipelineConfig config;
    tw::apply_environment(config);
    if (!cmd.config.empty()) tw::apply_config_file(config, std::filesystem::path(cmd.config));
    std::size_t value_index = 0;
    for (const Setting& s : kSettings) {
        const CLI::Option* opt = nullptr;
        for (const auto& [key, o] : cmd.options) {
            if (key == s.key) opt = o;
        }
        if (s.flag) {
            if (opt->count() > 0) config.resume = cmd.resume;
            continue;
        }
        const std::string& value = cmd.values[value_index++].second;
        if (opt->count() > 0) tw::apply_setting(config, s.key, value);
    }
    return config;
}

void synthesize(const tw::PlantedKgConfig& cfg, const std::filesystem::path& out) {
    tw::PlantedKg kg = tw::planted_kg(cfg);
    std::filesystem::create_directories(out);
    std::ofstream triples(out / "kg.tsv", std::ios::binary);
    tw::write_triples(triples, kg.graph);
    std::ofstream labels(out / "labels.tsv", std::ios::binary);
    for (const auto& [entity, set] : kg.entity_labels) {
        for (const auto& label : set) labels << entity << '\t' << label << '\n';
    }
    if (!triples || !labels) throw tw::Error("cannot write to " + out.string());
    std::cerr << "wrote " << kg.graph.triple_count() << " triples to " << (out / "kg.tsv").string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edge and triple embeddings from walks over (triple) line graphs"};
    app.require_subcommand(1);

    struct Command {
        const char* name;
        const char* help;
    };
    const Command commands[] = {
        {"run", "run every stage, then evaluate"},
        {"build-line-graph", "build the (triple) line graph"},
        {"weigh", "weight the line graph"},
        {"walk", "generate the walk corpus"},
        {"embed", "train skip-gram embeddings on the walks"},
        {"eval-classify", "one-vs-rest logistic regression over training fractions"},
        {"eval-cluster", "k-means clustering scored by NMI"},
    };
    std::deque<CommandOptions> options;
    std::vector<std::pair<std::string, CLI::App*>> subs;
    for (const Command& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        options.emplace_back();
        add_settings(*sub, options.back());
        subs.emplace_back(c.name, sub);
    }

    tw::PlantedKgConfig synth;
    std::string synth_out = "synthetic";
    CLI::App* synth_cmd = app.add_subcommand("synth-kg", "write a knowledge graph with planted predicate groups");
    synth_cmd->add_option("--out", synth_out, "output directory (kg.tsv, labels.tsv)");
    synth_cmd->add_option("--groups", synth.groups, "number of groups");
    synth_cmd->add_option("--entities-per-group", synth.entities_per_group, "entities per group");
    synth_cmd->add_option("--predicates-per-group", synth.predicates_per_group, "predicates per group");
    synth_cmd->add_option("--triples", synth.triples, "number of distinct triples");
    synth_cmd->add_option("--cross-fraction", synth.cross_fraction, "share of cross-group objects");
    synth_cmd->add_option("--seed", synth.seed, "random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth_cmd->parsed()) {
            synthesize(synth, synth_out);
            return 0;
        }
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (!subs[i].second->parsed()) continue;
            const std::string& name = subs[i].first;
            tw::PipelineConfig config = resolve(options[i]);
            config.validate();
            std::ostream& log = std::cerr;
            if (name == "run") {
                tw::run_pipeline(config, log);
            } else if (name == "build-line-graph") {
                tw::stage_build_line_graph(config, log);
            } else if (name == "weigh") {
                tw::stage_weigh(config, log);
            } else if (name == "walk") {
                tw::stage_walk(config, log);
            } else if (name == "embed") {
                tw::stage_embed(config, log);
            } else {
                auto rows = name == "eval-classify" ? tw::stage_eval_classify(config, log)
                                                    : tw::stage_eval_cluster(config, log);
                tw::ArtifactPaths paths(config.out);
                tw::write_metrics(paths.metrics, rows);
                tw::write_curves(paths, rows);
            }
        }
    } catch (const tw::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
