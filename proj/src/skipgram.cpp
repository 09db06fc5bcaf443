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

#include "triplewalk/skipgram.hpp"

#include <atomic>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <thread>

#include "triplewalk/error.hpp"
#include "triplewalk/text.hpp"

namespace triplewalk {

namespace {

double log_sigmoid(double x) { return std::log(sigmoid(x)); }

void check_dims(std::span<const double> center, std::span<const double> context,
                std::span<const std::vector<double>> negatives) {
    if (center.size() != context.size()) throw Error("center and context dimensions differ");
    for (const auto& n : negatives) {
        if (n.size() != center.size()) throw Error("negative sample dimension differs from center");
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    return triplewalk::dot(a.data(), b.data(), a.size());
}

}  // namespace

void TrainConfig::validate() const {
    if (dimension < 1) throw ConfigError("embedding dimension must be >= 1");
    if (window < 1) throw ConfigError("window must be >= 1");
    if (negatives < 1) throw ConfigError("negative samples must be >= 1");
    if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
    if (threads < 1) throw ConfigError("threads must be >= 1");
}

bool EmbeddingMatrix::all_finite() const {
    auto finite = [](float x) { return std::isfinite(x); };
    return std::all_of(input.begin(), input.end(), finite) &&
           std::all_of(context.begin(), context.end(), finite);
}

double pair_objective(std::span<const double> center, std::span<const double> context,
                      std::span<const std::vector<double>> negatives) {
    check_dims(center, context, negatives);
    double value = log_sigmoid(dot(center, context));
    for (const auto& n : negatives) value += log_sigmoid(-dot(center, n));
    return value;
}

PairGradient pair_gradient(std::span<const double> center, std::span<const double> context,
                           std::span<const std::vector<double>> negatives) {
    check_dims(center, context, negatives);
    const std::size_t d = center.size();
    PairGradient g;
    g.center.assign(d, 0.0);
    double coeff = 1.0 - sigmoid(dot(center, context));
    g.context.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        g.center[i] += coeff * context[i];
        g.context[i] = coeff * center[i];
    }
    for (const auto& n : negatives) {
        double c = -sigmoid(dot(center, n));
        std::vector<double> gn(d);
        for (std::size_t i = 0; i < d; ++i) {
            g.center[i] += c * n[i];
            gn[i] = c * center[i];
        }
        g.negatives.push_back(std::move(gn));
    }
    return g;
}

NoiseDistribution::NoiseDistribution(const WalkCorpus& corpus, std::size_t node_count)
    : probability_(node_count, 0.0) {
    if (corpus.empty()) throw Error("noise distribution needs a non-empty corpus");
    std::vector<double> counts(node_count, 0.0);
    for (std::size_t w = 0; w < corpus.size(); ++w) {
        for (LineNodeId v : corpus.walk(w)) {
            if (v >= node_count) throw Error("corpus node " + std::to_string(v) + " out of range");
            counts[v] += 1.0;
        }
    }
    for (double& c : counts) c = std::pow(c, 0.75);
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    for (std::size_t i = 0; i < node_count; ++i) probability_[i] = counts[i] / total;
    table_ = AliasTable(counts);
}

std::uint64_t count_pairs(const WalkCorpus& corpus, std::size_t window) {
    std::uint64_t pairs = 0;
    for (std::size_t w = 0; w < corpus.size(); ++w) {
        const std::size_t m = corpus.walk(w).size();
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t lo = i > window ? i - window : 0;
            std::size_t hi = std::min(m - 1, i + window);
            pairs += hi - lo;
        }
    }
    return pairs;
}

EmbeddingMatrix initial_embeddings(std::size_t node_count, std::size_t dim, std::uint64_t seed) {
    EmbeddingMatrix e;
    e.rows = node_count;
    e.dim = dim;
    e.input.resize(node_count * dim);
    e.context.assign(node_count * dim, 0.0f);
    Rng rng(derive_seed(seed, 0x696e6974));
    const double scale = 1.0 / static_cast<double>(dim);
    for (float& x : e.input) x = static_cast<float>((uniform01(rng) - 0.5) * scale);
    return e;
}

namespace {

struct TrainingState {
    EmbeddingMatrix& embeddings;
    const NoiseDistribution& noise;
    const TrainConfig& config;
    std::uint64_t total_pairs;
    std::atomic<std::uint64_t> processed{0};
};

void prefetch_row(const float* row, std::size_t dim) {
    const char* p = reinterpret_cast<const char*>(row);
    for (std::size_t off = 0; off < dim * sizeof(float); off += 64) __builtin_prefetch(p + off);
}

// Trains on walks order[begin, end). With several workers the embedding rows
// are read and written concurrently without synchronisation (Hogwild).
//
// Negatives for a pair are drawn one pair ahead of its update so their rows
// can be prefetched; sampling does not depend on the parameters, so the
// result is the same as drawing them just in time.
void train_range(TrainingState& state, const WalkCorpus& corpus, std::span<const std::size_t> order,
                 Rng& rng) {
    const std::size_t d = state.config.dimension;
    const std::size_t window = state.config.window;
    const double lr0 = state.config.learning_rate;
    const double total = static_cast<double>(std::max<std::uint64_t>(1, state.total_pairs));
    float* input = state.embeddings.input.data();
    float* context = state.embeddings.context.data();
    std::vector<float> scratch(d + state.config.negatives + 1);

    struct Pending {
        float* center = nullptr;
        float* target = nullptr;
        float lr = 0.0f;
        std::vector<float*> negatives;
    };
    Pending pending[2];
    for (auto& p : pending) p.negatives.reserve(state.config.negatives);
    bool have_pending = false;
    int slot = 0;

    for (std::size_t w : order) {
        auto walk = corpus.walk(w);
        const std::size_t m = walk.size();
        std::uint64_t done = state.processed.load(std::memory_order_relaxed);
        std::uint64_t local = 0;
        for (std::size_t i = 0; i < m; ++i) {
            float* center = input + static_cast<std::size_t>(walk[i]) * d;
            std::size_t lo = i > window ? i - window : 0;
            std::size_t hi = std::min(m - 1, i + window);
            for (std::size_t j = lo; j <= hi; ++j) {
                if (j == i) continue;
                const double progress = static_cast<double>(done + local) / total;
                Pending& next = pending[slot ^ 1];
                next.center = center;
                next.target = context + static_cast<std::size_t>(walk[j]) * d;
                next.lr = static_cast<float>(lr0 * std::max(1e-4, 1.0 - progress));
                next.negatives.clear();
                for (std::size_t k = 0; k < state.config.negatives; ++k) {
                    std::uint32_t noise = state.noise.sample(rng);
                    if (noise == walk[j]) continue;
                    float* row = context + static_cast<std::size_t>(noise) * d;
                    prefetch_row(row, d);
                    next.negatives.push_back(row);
                }
                if (have_pending) {
                    Pending& cur = pending[slot];
                    sgns_step<float>(cur.center, cur.target, cur.negatives, d, cur.lr, scratch.data());
                }
                slot ^= 1;
                have_pending = true;
                ++local;
            }
        }
        state.processed.fetch_add(local, std::memory_order_relaxed);
    }
    if (have_pending) {
        Pending& cur = pending[slot];
        sgns_step<float>(cur.center, cur.target, cur.negatives, d, cur.lr, scratch.data());
    }
}

}  // namespace

EmbeddingMatrix train(const WalkCorpus& corpus, std::size_t node_count, const TrainConfig& config) {
    config.validate();
    if (corpus.node_bound() > node_count) {
        throw Error("corpus references node " + std::to_string(corpus.node_bound() - 1) +
                    " but only " + std::to_string(node_count) + " nodes exist");
    }
    EmbeddingMatrix embeddings = initial_embeddings(node_count, config.dimension, config.seed);
    if (corpus.empty() || config.epochs == 0) return embeddings;

    NoiseDistribution noise(corpus, node_count);
    TrainingState state{embeddings, noise, config, count_pairs(corpus, config.window) * config.epochs};
    const unsigned threads = std::max(1u, config.threads);
    std::vector<Rng> rngs;
    for (unsigned t = 0; t < threads; ++t) rngs.emplace_back(derive_seed(config.seed, 0x6e6567, t));

    std::vector<std::size_t> order(corpus.size());
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        Rng shuffle_rng(derive_seed(config.seed, 0x6f72646572, epoch));
        shuffle(order, shuffle_rng);
        if (threads == 1) {
            train_range(state, corpus, order, rngs[0]);
            continue;
        }
        std::vector<std::thread> pool;
        const std::size_t chunk = (order.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t begin = std::min(order.size(), t * chunk);
            std::size_t end = std::min(order.size(), begin + chunk);
            pool.emplace_back([&, t, begin, end] {
                train_range(state, corpus, std::span<const std::size_t>(order).subspan(begin, end - begin),
                            rngs[t]);
            });
        }
        for (auto& th : pool) th.join();
    }
    return embeddings;
}

void write_embeddings(std::ostream& out, const EmbeddingMatrix& e, std::span<const std::string> tokens) {
    if (tokens.size() != e.rows) {
        throw Error("have " + std::to_string(tokens.size()) + " tokens for " + std::to_string(e.rows) +
                    " embedding rows");
    }
    out << e.rows << ' ' << e.dim << '\n';
    std::string line;
    for (std::size_t r = 0; r < e.rows; ++r) {
        const std::string& token = tokens[r];
        if (token.empty() || token.find_first_of(" \t\r\n") != std::string::npos) {
            throw Error("embedding token '" + token + "' is empty or contains whitespace");
        }
        line = token;
        for (float x : e.row(r)) {
            line.push_back(' ');
            line += format_real(x);
        }
        line.push_back('\n');
        out.write(line.data(), static_cast<std::streamsize>(line.size()));
    }
}

void save_embeddings(const std::filesystem::path& path, const EmbeddingMatrix& e,
                     std::span<const std::string> tokens) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    write_embeddings(out, e, tokens);
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

LoadedEmbeddings read_embeddings(std::istream& in) {
    LoadedEmbeddings result;
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "missing 'count dim' header");
    {
        std::size_t count = 0, dim = 0;
        const char* p = line.data();
        const char* end = p + line.size();
        auto r1 = std::from_chars(p, end, count);
        if (r1.ec != std::errc() || r1.ptr == end || *r1.ptr != ' ') {
            throw ParseError(1, "malformed embedding header '" + line + "'");
        }
        auto r2 = std::from_chars(r1.ptr + 1, end, dim);
        if (r2.ec != std::errc() || (r2.ptr != end && *r2.ptr != '\r') || dim == 0) {
            throw ParseError(1, "malformed embedding header '" + line + "'");
        }
        result.matrix.rows = count;
        result.matrix.dim = dim;
        result.matrix.input.reserve(count * dim);
        result.tokens.reserve(count);
    }
    const std::size_t dim = result.matrix.dim;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto space = line.find(' ');
        if (space == std::string::npos || space == 0) throw ParseError(line_no, "malformed embedding row");
        result.tokens.push_back(line.substr(0, space));
        const char* p = line.data() + space;
        const char* end = line.data() + line.size();
        std::size_t values = 0;
        while (p < end) {
            if (*p != ' ') throw ParseError(line_no, "malformed embedding row");
            ++p;
            float x = 0.0f;
            auto [next, ec] = std::from_chars(p, end, x);
            if (ec != std::errc()) throw ParseError(line_no, "invalid embedding value");
            result.matrix.input.push_back(x);
            ++values;
            p = next;
        }
        if (values != dim) {
            throw ParseError(line_no, "expected " + std::to_string(dim) + " values, found " +
                                          std::to_string(values));
        }
    }
    if (result.tokens.size() != result.matrix.rows) {
        throw ParseError(0, "header announces " + std::to_string(result.matrix.rows) + " rows, file has " +
                                std::to_string(result.tokens.size()));
    }
    return result;
}

LoadedEmbeddings load_embeddings(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "' for reading");
    try {
        return read_embeddings(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

}  // namespace triplewalk
