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

#include "triplewalk/walks.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <thread>

#include "triplewalk/error.hpp"

namespace triplewalk {

void WalkConfig::validate() const {
    if (walks_per_node < 1) throw ConfigError("walks per node must be >= 1");
    if (max_length < 1) throw ConfigError("walk length must be >= 1");
    if (threads < 1) throw ConfigError("threads must be >= 1");
}

void WalkCorpus::add(std::span<const LineNodeId> walk) {
    tokens_.insert(tokens_.end(), walk.begin(), walk.end());
    offsets_.push_back(tokens_.size());
}

std::span<const LineNodeId> WalkCorpus::walk(std::size_t i) const {
    if (i >= size()) throw Error("walk index " + std::to_string(i) + " out of range");
    return std::span<const LineNodeId>(tokens_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

std::size_t WalkCorpus::node_bound() const {
    if (tokens_.empty()) return 0;
    return static_cast<std::size_t>(*std::max_element(tokens_.begin(), tokens_.end())) + 1;
}

WalkSampler::WalkSampler(const LineGraph& lg) : graph_(&lg), tables_(lg.node_count()) {
    std::vector<double> local;
    for (LineNodeId v = 0; v < lg.node_count(); ++v) {
        auto nbrs = lg.neighbors(v);
        if (nbrs.empty()) continue;
        local.clear();
        for (const auto& nb : nbrs) {
            double w = lg.weight(nb.edge);
            if (!(w >= 0.0) || !std::isfinite(w)) {
                throw Error("invalid weight on line edge " + std::to_string(nb.edge));
            }
            local.push_back(w);
        }
        tables_[v] = AliasTable(local);
    }
}

std::optional<LineNodeId> WalkSampler::sample_next(LineNodeId current, Rng& rng) const {
    auto nbrs = graph_->neighbors(current);
    if (nbrs.empty()) return std::nullopt;
    return nbrs[tables_[current].sample(rng)].node;
}

WalkCorpus generate_walks(const LineGraph& lg, const WalkConfig& config) {
    config.validate();
    if (lg.node_count() == 0) throw Error("cannot walk a line graph without nodes");
    WalkSampler sampler(lg);
    const std::size_t nodes = lg.node_count();
    const std::size_t total = nodes * config.walks_per_node;
    const std::size_t stride = config.max_length;

    // Fixed-stride slots filled in parallel, compacted afterwards.
    WalkCorpus corpus;
    std::vector<LineNodeId>& slots = corpus.tokens_;
    slots.assign(total * stride, 0);
    std::vector<std::size_t> lengths(total, 0);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            const std::size_t round = idx / nodes;
            const auto start = static_cast<LineNodeId>(idx % nodes);
            Rng rng(derive_seed(config.seed, start, round));
            LineNodeId* out = slots.data() + idx * stride;
            std::size_t len = 0;
            out[len++] = start;
            LineNodeId current = start;
            while (len < stride) {
                auto next = sampler.sample_next(current, rng);
                if (!next) break;
                current = *next;
                out[len++] = current;
            }
            lengths[idx] = len;
        }
    };
    const unsigned threads = std::max(1u, config.threads);
    if (threads == 1) {
        work(0, total);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (total + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t begin = std::min(total, t * chunk);
            pool.emplace_back(work, begin, std::min(total, begin + chunk));
        }
        for (auto& th : pool) th.join();
    }

    std::size_t write = 0;
    corpus.offsets_.assign(1, 0);
    corpus.offsets_.reserve(total + 1);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::copy_n(slots.begin() + static_cast<std::ptrdiff_t>(idx * stride), lengths[idx],
                    slots.begin() + static_cast<std::ptrdiff_t>(write));
        write += lengths[idx];
        corpus.offsets_.push_back(write);
    }
    slots.resize(write);
    slots.shrink_to_fit();
    return corpus;
}

void write_corpus(std::ostream& out, const WalkCorpus& corpus) {
    std::string line;
    char buf[16];
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        line.clear();
        for (LineNodeId v : corpus.walk(i)) {
            if (!line.empty()) line.push_back(' ');
            auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
            line.append(buf, end);
        }
        line.push_back('\n');
        out.write(line.data(), static_cast<std::streamsize>(line.size()));
    }
}

WalkCorpus read_corpus(std::istream& in) {
    WalkCorpus corpus;
    std::string line;
    std::vector<LineNodeId> walk;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        walk.clear();
        const char* p = line.data();
        const char* end = p + line.size();
        while (p < end) {
            while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
            if (p == end) break;
            LineNodeId v = 0;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc() || (next < end && *next != ' ' && *next != '\t' && *next != '\r')) {
                throw ParseError(line_no, "corpus tokens must be line-node ids");
            }
            walk.push_back(v);
            p = next;
        }
        if (walk.empty()) throw ParseError(line_no, "empty walk");
        corpus.add(walk);
    }
    return corpus;
}

void save_corpus(const std::filesystem::path& path, const WalkCorpus& corpus) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    write_corpus(out, corpus);
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

WalkCorpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "' for reading");
    try {
        return read_corpus(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

}  // namespace triplewalk
