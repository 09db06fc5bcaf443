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
#include <span>
#include <vector>

#include "triplewalk/graph.hpp"
#include "triplewalk/labels.hpp"

namespace triplewalk {

/// Community id per node, dense, numbered by smallest member node.
using Partition = std::vector<std::uint32_t>;

/// Newman modularity of `partition` on the unweighted graph.
double modularity(const HomogeneousGraph& g, std::span<const std::uint32_t> partition);

/// Greedy agglomerative modularity maximisation (Clauset-Newman-Moore):
/// starting from singletons, repeatedly merges the pair of adjacent
/// communities with the largest modularity gain while that gain is positive.
/// Ties go to the lexicographically smallest community pair.
Partition detect_communities(const HomogeneousGraph& g);

/// Edges whose endpoints share a community, labelled with that community.
/// Class ids are dense in community order; class names are the community ids.
LabeledDataset label_intra_community_edges(const HomogeneousGraph& g,
                                           std::span<const std::uint32_t> partition);

}  // namespace triplewalk
