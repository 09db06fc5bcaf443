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

#include "triplewalk/community.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "triplewalk/error.hpp"

namespace triplewalk {

namespace {

Partition renumber(std::span<const std::uint32_t> raw) {
    std::map<std::uint32_t, std::uint32_t> ids;
    Partition out(raw.size());
    for (std::size_t v = 0; v < raw.size(); ++v) {
        auto [it, inserted] = ids.emplace(raw[v], static_cast<std::uint32_t>(ids.size()));
        out[v] = it->second;
    }
    return out;
}

}  // namespace

double modularity(const HomogeneousGraph& g, std::span<const std::uint32_t> partition) {
    if (partition.size() != g.node_count()) throw Error("partition size does not match the graph");
    const double m = static_cast<double>(g.edge_count());
    if (m == 0.0) return 0.0;
    std::uint32_t communities = 0;
    for (auto c : partition) communities = std::max(communities, c + 1);
    std::vector<double> internal(communities, 0.0), degree(communities, 0.0);
    for (const Edge& e : g.edges()) {
        if (partition[e.first] == partition[e.second]) internal[partition[e.first]] += 1.0;
    }
    for (NodeId v = 0; v < g.node_count(); ++v) degree[partition[v]] += static_cast<double>(g.degree(v));
    double q = 0.0;
    for (std::uint32_t c = 0; c < communities; ++c) {
        q += internal[c] / m - (degree[c] / (2.0 * m)) * (degree[c] / (2.0 * m));
    }
    return q;
}

Partition detect_communities(const HomogeneousGraph& g) {
    const std::size_t n = g.node_count();
    if (n == 0) return {};
    const double two_m = 2.0 * static_cast<double>(g.edge_count());
    if (two_m == 0.0) {
        Partition p(n);
        for (std::size_t v = 0; v < n; ++v) p[v] = static_cast<std::uint32_t>(v);
        return p;
    }

    // e[i][j]: fraction of edge ends joining communities i and j (each
    // undirected edge counts 1/2m in both directions); a[i]: degree fraction.
    std::vector<std::map<std::uint32_t, double>> e(n);
    std::vector<double> a(n, 0.0);
    for (const Edge& edge : g.edges()) {
        e[edge.first][edge.second] += 1.0 / two_m;
        e[edge.second][edge.first] += 1.0 / two_m;
    }
    for (NodeId v = 0; v < n; ++v) a[v] = static_cast<double>(g.degree(v)) / two_m;

    std::vector<std::uint32_t> owner(n);
    for (std::size_t v = 0; v < n; ++v) owner[v] = static_cast<std::uint32_t>(v);
    std::vector<char> alive(n, 1);

    while (true) {
        double best = 0.0;
        std::uint32_t bi = 0, bj = 0;
        bool found = false;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            for (const auto& [j, eij] : e[i]) {
                if (j <= i) continue;
                double gain = 2.0 * (eij - a[i] * a[j]);
                if (gain > best) {
                    best = gain;
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        }
        if (!found) break;

        // Merge bj into bi.
        for (const auto& [x, ejx] : e[bj]) {
            if (x == bi) continue;
            e[bi][x] += ejx;
            e[x][bi] += ejx;
            e[x].erase(bj);
        }
        e[bi].erase(bj);
        e[bj].clear();
        a[bi] += a[bj];
        a[bj] = 0.0;
        alive[bj] = 0;
        for (auto& o : owner) {
            if (o == bj) o = bi;
        }
    }
    return renumber(owner);
}

LabeledDataset label_intra_community_edges(const HomogeneousGraph& g,
                                           std::span<const std::uint32_t> partition) {
    if (partition.size() != g.node_count()) throw Error("partition size does not match the graph");
    std::map<std::uint32_t, std::uint32_t> class_of;
    for (const Edge& edge : g.edges()) {
        if (partition[edge.first] == partition[edge.second]) class_of.emplace(partition[edge.first], 0);
    }
    LabeledDataset ds;
    for (auto& [community, id] : class_of) {
        id = static_cast<std::uint32_t>(ds.class_names.size());
        ds.class_names.push_back(std::to_string(community));
    }
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const Edge& edge = g.edge(id);
        if (partition[edge.first] != partition[edge.second]) continue;
        ds.nodes.push_back(id);
        ds.classes.push_back(class_of.at(partition[edge.first]));
    }
    return ds;
}

}  // namespace triplewalk
