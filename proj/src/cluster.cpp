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

#include "triplewalk/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "triplewalk/error.hpp"
#include "triplewalk/random.hpp"

namespace triplewalk {

namespace {

// k-means++: first centre uniform, then proportional to squared distance to
// the nearest chosen centre.
Eigen::MatrixXd seed_centroids(const Eigen::MatrixXd& points, std::size_t k, Rng& rng) {
    const auto n = points.rows();
    Eigen::MatrixXd centroids(static_cast<Eigen::Index>(k), points.cols());
    std::vector<char> chosen(static_cast<std::size_t>(n), 0);
    auto first = static_cast<Eigen::Index>(uniform_index(rng, static_cast<std::uint64_t>(n)));
    centroids.row(0) = points.row(first);
    chosen[static_cast<std::size_t>(first)] = 1;
    Eigen::VectorXd d2 = (points.rowwise() - points.row(first)).rowwise().squaredNorm();
    for (std::size_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!chosen[static_cast<std::size_t>(i)]) total += d2(i);
        }
        Eigen::Index pick = -1;
        if (total > 0.0) {
            double r = uniform01(rng) * total;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (chosen[static_cast<std::size_t>(i)]) continue;
                pick = i;
                r -= d2(i);
                if (r < 0.0) break;
            }
        } else {
            // All remaining points coincide with a centre; take any unchosen one.
            std::vector<Eigen::Index> free;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (!chosen[static_cast<std::size_t>(i)]) free.push_back(i);
            }
            pick = free[uniform_index(rng, free.size())];
        }
        chosen[static_cast<std::size_t>(pick)] = 1;
        centroids.row(static_cast<Eigen::Index>(c)) = points.row(pick);
        d2 = d2.cwiseMin((points.rowwise() - points.row(pick)).rowwise().squaredNorm());
    }
    return centroids;
}

// Assigns each point to its nearest centroid; returns the inertia.
double assign(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
              std::vector<std::uint32_t>& assignment) {
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::uint32_t arg = 0;
        for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
            double d = (points.row(i) - centroids.row(c)).squaredNorm();
            if (d < best) {
                best = d;
                arg = static_cast<std::uint32_t>(c);
            }
        }
        assignment[static_cast<std::size_t>(i)] = arg;
        inertia += best;
    }
    return inertia;
}

void update(const Eigen::MatrixXd& points, const std::vector<std::uint32_t>& assignment,
            Eigen::MatrixXd& centroids) {
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(centroids.rows(), centroids.cols());
    std::vector<std::size_t> counts(static_cast<std::size_t>(centroids.rows()), 0);
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        sums.row(assignment[static_cast<std::size_t>(i)]) += points.row(i);
        ++counts[assignment[static_cast<std::size_t>(i)]];
    }
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
        // Empty clusters keep their previous centre.
        if (counts[static_cast<std::size_t>(c)] > 0) {
            centroids.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
        }
    }
}

double entropy(const std::map<std::uint32_t, double>& counts, double n) {
    double h = 0.0;
    for (const auto& [label, c] : counts) {
        double p = c / n;
        h -= p * std::log(p);
    }
    return h;
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed,
                    const KMeansOptions& options) {
    if (points.rows() == 0) throw Error("k-means needs at least one point");
    if (k == 0 || k > static_cast<std::size_t>(points.rows())) {
        throw Error("k-means needs 1 <= k <= " + std::to_string(points.rows()) + ", got " + std::to_string(k));
    }
    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
    for (std::size_t r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, r, 0x6b6d));
        KMeansResult run;
        run.centroids = seed_centroids(points, k, rng);
        run.assignment.assign(static_cast<std::size_t>(points.rows()), 0);
        std::vector<std::uint32_t> previous;
        for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
            run.inertia = assign(points, run.centroids, run.assignment);
            run.inertia_trace.push_back(run.inertia);
            if (run.assignment == previous) break;
            previous = run.assignment;
            update(points, run.assignment, run.centroids);
        }
        if (run.inertia < best.inertia) best = std::move(run);
    }
    return best;
}

double nmi(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    if (a.size() != b.size()) throw Error("partitions differ in length");
    if (a.empty()) throw Error("NMI needs at least one item");
    const double n = static_cast<double>(a.size());
    std::map<std::uint32_t, double> ca, cb;
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> joint;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ca[a[i]] += 1.0;
        cb[b[i]] += 1.0;
        joint[{a[i], b[i]}] += 1.0;
    }
    if (ca.size() == 1 && cb.size() == 1) return 1.0;
    const double ha = entropy(ca, n);
    const double hb = entropy(cb, n);
    if (ha == 0.0 || hb == 0.0) return 0.0;
    double mi = 0.0;
    for (const auto& [key, c] : joint) {
        mi += (c / n) * std::log(c * n / (ca[key.first] * cb[key.second]));
    }
    return std::clamp(mi / std::sqrt(ha * hb), 0.0, 1.0);
}

}  // namespace triplewalk
