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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "triplewalk/alias_table.hpp"
#include "triplewalk/random.hpp"
#include "triplewalk/walks.hpp"

namespace triplewalk {

struct TrainConfig {
    std::size_t dimension = 128;
    std::size_t window = 10;
    std::size_t negatives = 10;
    std::size_t epochs = 5;
    double learning_rate = 0.025;
    std::uint64_t seed = 1;
    /// 1 = deterministic single worker; more = lock-free shared updates.
    unsigned threads = 1;

    void validate() const;
};

/// Input ("center") and output ("context") vectors, row-major,
/// rows x dim each. The input vectors are the learned embeddings.
struct EmbeddingMatrix {
    std::size_t rows = 0;
    std::size_t dim = 0;
    std::vector<float> input;
    std::vector<float> context;

    std::span<const float> row(std::size_t i) const {
        return std::span<const float>(input).subspan(i * dim, dim);
    }
    /// True when every stored parameter is finite.
    bool all_finite() const;
};

inline constexpr double kSigmoidClamp = 30.0;

/// Logistic function with the argument clamped to [-30, 30].
template <typename Real>
Real sigmoid(Real x) {
    const Real c = static_cast<Real>(kSigmoidClamp);
    x = std::clamp(x, -c, c);
    return Real(1) / (Real(1) + std::exp(-x));
}

template <typename Real>
Real dot(const Real* a, const Real* b, std::size_t n) {
    Real s = 0;
#pragma omp simd reduction(+ : s)
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

/// Negative-sampling objective of one (center, context) pair:
///   log s(u.v) + sum_j log s(-u.n_j)
/// with u the center input vector, v the context output vector and n_j the
/// output vectors of the negatives.
double pair_objective(std::span<const double> center, std::span<const double> context,
                      std::span<const std::vector<double>> negatives);

struct PairGradient {
    std::vector<double> center;
    std::vector<double> context;
    std::vector<std::vector<double>> negatives;
};

/// Analytic gradient of pair_objective with respect to every argument.
PairGradient pair_gradient(std::span<const double> center, std::span<const double> context,
                           std::span<const std::vector<double>> negatives);

/// One ascent step on pair_objective, in place: every parameter moves by
/// learning_rate times its gradient at the pre-step point. `scratch` holds
/// dim + negatives.size() + 1 values.
template <typename Real>
void sgns_step(Real* center, Real* context, std::span<Real* const> negatives, std::size_t dim,
               Real learning_rate, Real* scratch) {
    const std::size_t m = negatives.size() + 1;
    Real* coeff = scratch + dim;
    auto row = [&](std::size_t k) { return k == 0 ? context : negatives[k - 1]; };
    // d/dx log s(x) = 1 - s(x); d/dx log s(-x) = -s(x)
    for (std::size_t k = 0; k < m; ++k) coeff[k] = dot(center, row(k), dim);
    for (std::size_t k = 0; k < m; ++k) {
        coeff[k] = ((k == 0 ? Real(1) : Real(0)) - sigmoid(coeff[k])) * learning_rate;
    }
    std::fill(scratch, scratch + dim, Real(0));
    for (std::size_t k = 0; k < m; ++k) {
        Real* out = row(k);
        const Real g = coeff[k];
#pragma omp simd
        for (std::size_t i = 0; i < dim; ++i) {
            scratch[i] += g * out[i];
            out[i] += g * center[i];
        }
    }
#pragma omp simd
    for (std::size_t i = 0; i < dim; ++i) center[i] += scratch[i];
}

/// Noise distribution for negatives: corpus frequency raised to 3/4.
class NoiseDistribution {
public:
    NoiseDistribution(const WalkCorpus& corpus, std::size_t node_count);
    std::uint32_t sample(Rng& rng) const { return table_.sample(rng); }
    std::span<const double> probabilities() const noexcept { return probability_; }

private:
    AliasTable table_;
    std::vector<double> probability_;
};

/// Number of (center, context) pairs a window produces over the corpus.
std::uint64_t count_pairs(const WalkCorpus& corpus, std::size_t window);

/// Skip-gram with negative sampling. Every node within `window` positions of
/// a center (excluding itself, truncated at walk ends) is a positive; each
/// positive draws `negatives` noise nodes. The step size decays linearly to
/// 1e-4 of its initial value across all processed pairs. `node_count` must
/// exceed every id in the corpus.
EmbeddingMatrix train(const WalkCorpus& corpus, std::size_t node_count, const TrainConfig& config);

/// Initial parameters: input uniform in [-0.5/d, 0.5/d], context all zero.
EmbeddingMatrix initial_embeddings(std::size_t node_count, std::size_t dim, std::uint64_t seed);

/// Header `count dim`, then `token v1 ... vd` per row (input vectors).
/// Tokens must not contain whitespace; see escape_token.
void write_embeddings(std::ostream& out, const EmbeddingMatrix& e, std::span<const std::string> tokens);
void save_embeddings(const std::filesystem::path& path, const EmbeddingMatrix& e,
                     std::span<const std::string> tokens);

struct LoadedEmbeddings {
    std::vector<std::string> tokens;
    EmbeddingMatrix matrix;  // context vectors are not stored on disk
};
LoadedEmbeddings read_embeddings(std::istream& in);
LoadedEmbeddings load_embeddings(const std::filesystem::path& path);

}  // namespace triplewalk
