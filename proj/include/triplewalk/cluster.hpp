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

#include <Eigen/Dense>

namespace triplewalk {

struct KMeansOptions {
    std::size_t restarts = 10;
    std::size_t max_iterations = 300;
};

struct KMeansResult {
    std::vector<std::uint32_t> assignment;
    Eigen::MatrixXd centroids;  // k x dim
    double inertia = 0.0;
    /// Inertia after each assignment step of the winning restart.
    std::vector<double> inertia_trace;
};

/// Lloyd iterations from k-means++ seeding, stopping when assignments no
/// longer change or after max_iterations; the restart with the lowest
/// inertia wins. Rows of `points` are observations.
KMeansResult kmeans(const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed,
                    const KMeansOptions& options = {});

/// I(A;B) / sqrt(H(A) H(B)) with natural logarithms. Identical partitions
/// score 1; a constant partition against a non-constant one scores 0.
double nmi(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

}  // namespace triplewalk
