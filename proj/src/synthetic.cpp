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

#include "triplewalk/synthetic.hpp"

#include <string>

#include "triplewalk/error.hpp"
#include "triplewalk/random.hpp"

namespace triplewalk {

PlantedKg planted_kg(const PlantedKgConfig& config) {
    if (config.groups < 1 || config.entities_per_group < 2 || config.predicates_per_group < 1) {
        throw ConfigError("planted graph needs >= 1 group, >= 2 entities and >= 1 predicate per group");
    }
    if (!(config.cross_fraction >= 0.0 && config.cross_fraction <= 1.0)) {
        throw ConfigError("cross fraction must lie in [0, 1]");
    }
    const double capacity = static_cast<double>(config.groups) * static_cast<double>(config.predicates_per_group) *
                            static_cast<double>(config.entities_per_group) *
                            static_cast<double>(config.entities_per_group - 1);
    if (static_cast<double>(config.triples) > 0.5 * capacity) {
        throw ConfigError("too many triples requested for the planted graph size");
    }

    auto entity = [](std::size_t g, std::size_t i) {
        return "g" + std::to_string(g) + "_e" + std::to_string(i);
    };
    auto predicate = [](std::size_t g, std::size_t i) {
        return "g" + std::to_string(g) + "_p" + std::to_string(i);
    };

    Rng rng(derive_seed(config.seed, 0x706c616e74));
    KnowledgeGraph::Builder builder;
    std::size_t made = 0;
    while (made < config.triples) {
        std::size_t g = uniform_index(rng, config.groups);
        std::size_t s = uniform_index(rng, config.entities_per_group);
        std::size_t p = uniform_index(rng, config.predicates_per_group);
        std::size_t og = g;
        if (config.groups > 1 && uniform01(rng) < config.cross_fraction) {
            og = (g + 1 + uniform_index(rng, config.groups - 1)) % config.groups;
        }
        std::size_t o = uniform_index(rng, config.entities_per_group);
        if (og == g && o == s) continue;
        if (builder.add(entity(g, s), predicate(g, p), entity(og, o))) ++made;
    }

    PlantedKg out{std::move(builder).build(), {}};
    for (const auto& name : out.graph.entities().names()) {
        auto underscore = name.find('_');
        out.entity_labels[name].insert("group" + name.substr(1, underscore - 1));
    }
    return out;
}

}  // namespace triplewalk
