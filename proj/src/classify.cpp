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

#include "triplewalk/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "triplewalk/error.hpp"
#include "triplewalk/random.hpp"

namespace triplewalk {

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double logistic(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    double ez = std::exp(z);
    return ez / (1.0 + ez);
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& x, std::span<const std::size_t> rows) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(rows[i]));
    return out;
}

}  // namespace

double logistic_loss(const Eigen::MatrixXd& x, const Eigen::VectorXd& targets, const Eigen::VectorXd& w,
                     double bias, double l2) {
    const Eigen::VectorXd z = (x * w).array() + bias;
    double total = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) total += softplus(z(i)) - targets(i) * z(i);
    return total / static_cast<double>(z.size()) + 0.5 * l2 * w.squaredNorm();
}

void logistic_gradient(const Eigen::MatrixXd& x, const Eigen::VectorXd& targets, const Eigen::VectorXd& w,
                       double bias, double l2, Eigen::VectorXd& grad_w, double& grad_bias) {
    Eigen::VectorXd residual = (x * w).array() + bias;
    for (Eigen::Index i = 0; i < residual.size(); ++i) residual(i) = logistic(residual(i)) - targets(i);
    const double inv_n = 1.0 / static_cast<double>(residual.size());
    grad_w = x.transpose() * residual * inv_n + l2 * w;
    grad_bias = residual.sum() * inv_n;
}

BinaryLogisticModel fit_binary_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& targets,
                                        const LogisticOptions& options) {
    if (x.rows() == 0 || x.rows() != targets.size()) throw Error("logistic regression needs matching, non-empty data");
    BinaryLogisticModel model;
    model.weights = Eigen::VectorXd::Zero(x.cols());
    Eigen::VectorXd gw, prev_gw, prev_w;
    double gb = 0.0, prev_gb = 0.0, prev_b = 0.0;
    double loss = logistic_loss(x, targets, model.weights, model.bias, options.l2);
    logistic_gradient(x, targets, model.weights, model.bias, options.l2, gw, gb);
    double step = 1.0;

    for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
        const double gnorm2 = gw.squaredNorm() + gb * gb;
        if (std::max(gw.cwiseAbs().maxCoeff(), std::abs(gb)) < options.tolerance) break;
        if (iter > 0) {
            // Barzilai-Borwein: <s, s> / <s, y>.
            Eigen::VectorXd sw = model.weights - prev_w;
            Eigen::VectorXd yw = gw - prev_gw;
            double sy = sw.dot(yw) + (model.bias - prev_b) * (gb - prev_gb);
            double ss = sw.squaredNorm() + (model.bias - prev_b) * (model.bias - prev_b);
            if (sy > 0.0 && std::isfinite(ss / sy)) step = ss / sy;
        }
        // Armijo backtracking.
        Eigen::VectorXd w_new;
        double b_new = 0.0, loss_new = 0.0;
        bool accepted = false;
        for (int tries = 0; tries < 60; ++tries) {
            w_new = model.weights - step * gw;
            b_new = model.bias - step * gb;
            loss_new = logistic_loss(x, targets, w_new, b_new, options.l2);
            if (loss_new <= loss - 1e-4 * step * gnorm2) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        prev_w = model.weights;
        prev_b = model.bias;
        prev_gw = gw;
        prev_gb = gb;
        model.weights = std::move(w_new);
        model.bias = b_new;
        loss = loss_new;
        logistic_gradient(x, targets, model.weights, model.bias, options.l2, gw, gb);
    }
    return model;
}

Split stratified_split(std::span<const std::uint32_t> classes, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ConfigError("train fraction must lie in (0, 1)");
    std::map<std::uint32_t, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < classes.size(); ++i) members[classes[i]].push_back(i);
    Split split;
    for (auto& [c, rows] : members) {
        Rng rng(derive_seed(seed, c, 0x73706c6974));
        shuffle(rows, rng);
        auto take = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(rows.size())));
        split.train.insert(split.train.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(take));
        split.test.insert(split.test.end(), rows.begin() + static_cast<std::ptrdiff_t>(take), rows.end());
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

OneVsRestClassifier::OneVsRestClassifier(const Eigen::MatrixXd& x, std::span<const std::uint32_t> classes,
                                         std::size_t class_count, const LogisticOptions& options) {
    if (static_cast<std::size_t>(x.rows()) != classes.size()) throw Error("feature rows and labels differ in count");
    std::vector<std::size_t> count(class_count, 0);
    for (auto c : classes) {
        if (c >= class_count) throw Error("class id " + std::to_string(c) + " out of range");
        ++count[c];
    }
    for (std::uint32_t c = 0; c < class_count; ++c) {
        if (count[c] == 0) {
            dropped_.push_back(c);
            continue;
        }
        Eigen::VectorXd targets(x.rows());
        for (std::size_t i = 0; i < classes.size(); ++i) targets(static_cast<Eigen::Index>(i)) = classes[i] == c ? 1.0 : 0.0;
        class_ids_.push_back(c);
        models_.push_back(fit_binary_logistic(x, targets, options));
    }
    if (models_.empty()) throw Error("no class has training data");
}

std::uint32_t OneVsRestClassifier::predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
    std::size_t best = 0;
    double best_score = models_[0].score(x);
    for (std::size_t m = 1; m < models_.size(); ++m) {
        double s = models_[m].score(x);
        if (s > best_score) {
            best_score = s;
            best = m;
        }
    }
    return class_ids_[best];
}

std::vector<std::uint32_t> OneVsRestClassifier::predict(const Eigen::MatrixXd& x) const {
    Eigen::MatrixXd w(x.cols(), static_cast<Eigen::Index>(models_.size()));
    Eigen::RowVectorXd b(static_cast<Eigen::Index>(models_.size()));
    for (std::size_t m = 0; m < models_.size(); ++m) {
        w.col(static_cast<Eigen::Index>(m)) = models_[m].weights;
        b(static_cast<Eigen::Index>(m)) = models_[m].bias;
    }
    Eigen::MatrixXd scores = (x * w).rowwise() + b;
    std::vector<std::uint32_t> out;
    out.reserve(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        // first maximum, matching predict_row
        Eigen::Index best = 0;
        for (Eigen::Index m = 1; m < scores.cols(); ++m) {
            if (scores(i, m) > scores(i, best)) best = m;
        }
        out.push_back(class_ids_[static_cast<std::size_t>(best)]);
    }
    return out;
}

TrainedClassifier train_logistic_ovr(const Eigen::MatrixXd& x, std::span<const std::uint32_t> classes,
                                     double train_fraction, std::uint64_t seed, const LogisticOptions& options) {
    if (static_cast<std::size_t>(x.rows()) != classes.size()) throw Error("feature rows and labels differ in count");
    std::set<std::uint32_t> distinct(classes.begin(), classes.end());
    if (distinct.size() < 2) throw Error("classification needs at least two classes");
    const std::size_t class_count = *distinct.rbegin() + 1;
    Split split = stratified_split(classes, train_fraction, seed);
    if (split.train.empty()) throw Error("training split is empty");
    std::vector<std::uint32_t> train_classes;
    for (auto i : split.train) train_classes.push_back(classes[i]);
    OneVsRestClassifier clf(select_rows(x, split.train), train_classes, class_count, options);
    return {std::move(clf), std::move(split)};
}

namespace {

struct ClassCounts {
    std::size_t tp = 0, fp = 0, fn = 0;
};

std::map<std::uint32_t, ClassCounts> confusion(std::span<const std::uint32_t> predicted,
                                               std::span<const std::uint32_t> actual) {
    if (predicted.size() != actual.size()) throw Error("predicted and actual lengths differ");
    if (predicted.empty()) throw Error("F1 needs at least one item");
    std::map<std::uint32_t, ClassCounts> counts;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (predicted[i] == actual[i]) {
            ++counts[actual[i]].tp;
        } else {
            ++counts[predicted[i]].fp;
            ++counts[actual[i]].fn;
        }
    }
    return counts;
}

double f1(std::size_t tp, std::size_t fp, std::size_t fn) {
    if (tp == 0) return 0.0;
    return 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
}

}  // namespace

double micro_f1(std::span<const std::uint32_t> predicted, std::span<const std::uint32_t> actual) {
    ClassCounts total;
    for (const auto& [c, k] : confusion(predicted, actual)) {
        total.tp += k.tp;
        total.fp += k.fp;
        total.fn += k.fn;
    }
    return f1(total.tp, total.fp, total.fn);
}

double macro_f1(std::span<const std::uint32_t> predicted, std::span<const std::uint32_t> actual) {
    auto counts = confusion(predicted, actual);
    double sum = 0.0;
    for (const auto& [c, k] : counts) sum += f1(k.tp, k.fp, k.fn);
    return sum / static_cast<double>(counts.size());
}

ClassificationScores evaluate_classification(const Eigen::MatrixXd& x, std::span<const std::uint32_t> classes,
                                             double train_fraction, std::uint64_t seed,
                                             const LogisticOptions& options) {
    TrainedClassifier trained = train_logistic_ovr(x, classes, train_fraction, seed, options);
    if (trained.split.test.empty()) throw Error("test split is empty");
    std::vector<std::uint32_t> predicted = trained.classifier.predict(select_rows(x, trained.split.test));
    std::vector<std::uint32_t> actual;
    for (auto i : trained.split.test) actual.push_back(classes[i]);
    return {micro_f1(predicted, actual), macro_f1(predicted, actual), trained.classifier.dropped_classes()};
}

}  // namespace triplewalk
