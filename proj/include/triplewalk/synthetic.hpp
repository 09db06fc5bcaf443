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

#include "triplewalk/graph.hpp"

namespace triplewalk {

/// Knowledge graph with planted groups: every group owns a block of entities
/// and a block of predicates, and most triples stay inside one group.
struct PlantedKgConfig {
    std::size_t groups = 3;
    std::size_t entities_per_group = 100;
    std::size_t predicates_per_group = 3;
    std::size_t triples = 1500;
    /// Probability that a triple's object is drawn from another group.
    double cross_fraction = 0.05;
    std::uint64_t seed = 1;
};

struct PlantedKg {
    KnowledgeGraph graph;
    /// Entity name -> {"group<g>"}.
    TokenLabels entity_labels;
};

/// Entities are named `g<group>_e<index>`, predicates `g<group>_p<index>`.
/// Triples are distinct; the triple count must not exceed what the groups
/// can hold.
PlantedKg planted_kg(const PlantedKgConfig& config);

}  // namespace triplewalk
