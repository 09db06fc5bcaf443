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

struct LogisticOptions {
    double l2 = 1e-4;
    std::size_t max_iterations = 1000;
    /// Stop once the gradient's max-norm drops below this.
    double tolerance = 1e-6;
};

struct BinaryLogisticModel {
    Eigen::VectorXd weights;
    double bias = 0.0;

    double score(const Eigen::Ref<const Eigen::RowVectorXd>& x) const { return x.dot(weights) + bias; }
};

/// Mean binary cross-entropy plus (l2 / 2) * |w|^2; targets are 0 or 1.
double logistic_loss(const Eigen::MatrixXd& x, const Eigen::VectorXd& targets, const Eigen::VectorXd& w,
                     double bias, double l2);
/// Gradient of logistic_loss.
void logistic_gradient(const Eigen::MatrixXd& x, const Eigen::VectorXd& targets, const Eigen::VectorXd& w,
                       double bias, double l2, Eigen::VectorXd& grad_w, double& grad_bias);

/// Full-batch gradient descent with Armijo backtracking; each line search
/// starts from the Barzilai-Borwein step estimate.
BinaryLogisticModel fit_binary_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& targets,
                                        const LogisticOptions& options = {});

struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Per class, round(train_fraction * size) shuffled members go to training.
Split stratified_split(std::span<const std::uint32_t> classes, double train_fraction, std::uint64_t seed);

/// One binary logistic model per class; prediction is the arg-max score.
class OneVsRestClassifier {
public:
    /// Classes with no positive training row are skipped and reported by
    /// dropped_classes(); they are never predicted.
    OneVsRestClassifier(const Eigen::MatrixXd& x, std::span<const std::uint32_t> classes,
                        std::size_t class_count, const LogisticOptions& options = {});

    std::uint32_t predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& x) const;
    std::vector<std::uint32_t> predict(const Eigen::MatrixXd& x) const;
    const std::vector<std::uint32_t>& dropped_classes() const noexcept { return dropped_; }

private:
    std::vector<std::uint32_t> class_ids_;
    std::vector<BinaryLogisticModel> models_;
    std::vector<std::uint32_t> dropped_;
};

struct TrainedClassifier {
    OneVsRestClassifier classifier;
    Split split;
};

/// Stratified split, then one-vs-rest training on the training rows.
/// Requires at least two classes and train_fraction in (0, 1).
TrainedClassifier train_logistic_ovr(const Eigen::MatrixXd& x, std::span<const std::uint32_t> classes,
                                     double train_fraction, std::uint64_t seed,
                                     const LogisticOptions& options = {});

/// Pooled-count F1 over classes; equals accuracy for single-label data.
double micro_f1(std::span<const std::uint32_t> predicted, std::span<const std::uint32_t> actual);
/// Mean per-class F1 over every class in predicted or actual.
double macro_f1(std::span<const std::uint32_t> predicted, std::span<const std::uint32_t> actual);

struct ClassificationScores {
    double micro_f1 = 0.0;
    double macro_f1 = 0.0;
    std::vector<std::uint32_t> dropped_classes;
};

/// Held-out micro/macro F1 of a one-vs-rest model trained on a stratified
/// split.
ClassificationScores evaluate_classification(const Eigen::MatrixXd& x, std::span<const std::uint32_t> classes,
                                             double train_fraction, std::uint64_t seed,
                                             const LogisticOptions& options = {});

}  // namespace triplewalk
