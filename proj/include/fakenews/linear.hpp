#pragma once

// Linear classifiers over sparse TF-IDF features: logistic regression
// (log-loss) and linear SVM (hinge loss), sharing one seeded SGD core.
//
// Objectives (n = sample count, labels y in {0,1}, ytilde = 2y-1):
//   log:   (1/n) sum log-loss(sigmoid(w.x+b), y)        + (lambda/2) ||w||^2
//   hinge: (1/n) sum max(0, 1 - ytilde (w.x+b))         + (lambda/2) ||w||^2
// The bias is never regularized. Hinge training follows the Pegasos step
// schedule eta_t = 1/(lambda t) when lambda > 0 and a constant rate when
// lambda = 0; log-loss uses a constant rate. Example order is a fresh
// Fisher-Yates shuffle per epoch from one xoshiro256** stream seeded with
// hyper.seed, so training is bitwise reproducible.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "fakenews/error.hpp"
#include "fakenews/prng.hpp"
#include "fakenews/sparse.hpp"

namespace fakenews {

enum class LossKind { log, hinge };

struct LinearModel {
    std::vector<double> weights;
    double bias = 0.0;
    LossKind loss_kind = LossKind::log;
    double lambda = 0.0;

    std::size_t dim() const { return weights.size(); }
};

struct TrainHyper {
    double learning_rate = 0.1;
    std::size_t epochs = 20;
    double lambda = 1e-4;
    std::uint64_t seed = 42;
};

// Numerically stable sigmoid; no overflow for |score| up to 1e4 and beyond.
inline double sigmoid(double score) {
    if (score >= 0.0) return 1.0 / (1.0 + std::exp(-score));
    const double e = std::exp(score);
    return e / (1.0 + e);
}

// log(1 + exp(t)) without overflow.
inline double softplus(double t) {
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

inline double decision(const LinearModel& model, const SparseVector& x) {
    check_dim(x, model.dim());
    return dot(model.weights, x) + model.bias;
}

inline double predict_proba(const LinearModel& model, const SparseVector& x) {
    if (model.loss_kind != LossKind::log)
        raise(ErrorKind::WrongModelKind,
              "predict_proba requires a log-loss model; this one was trained on hinge loss");
    return sigmoid(decision(model, x));
}

// Label 1 iff the decision score is >= 0; a tie at exactly 0 maps to 1
// (real). Equivalent to probability >= 0.5 for log models.
inline int predict(const LinearModel& model, const SparseVector& x) {
    return decision(model, x) >= 0.0 ? 1 : 0;
}

namespace detail {

inline void validate_training_input(const std::vector<SparseVector>& X,
                                    const std::vector<int>& y) {
    if (X.size() != y.size())
        raise(ErrorKind::LengthMismatch, "feature and label counts differ");
    if (X.size() < 2)
        raise(ErrorKind::EmptyCorpus, "need at least 2 training examples");
    for (const SparseVector& x : X) check_dim(x, X.front().dim);
    bool saw[2] = {false, false};
    for (int label : y) saw[label == 1] = true;
    if (!saw[0] || !saw[1])
        raise(ErrorKind::SingleClassTraining,
              "training data contains a single class; both labels are required");
}

inline void check_finite(const std::vector<double>& w, double b) {
    for (double v : w)
        if (!std::isfinite(v))
            raise(ErrorKind::DivergedTraining, "non-finite weight after training");
    if (!std::isfinite(b))
        raise(ErrorKind::DivergedTraining, "non-finite bias after training");
}

}  // namespace detail

// Full-batch objective and gradient, exposed for finite-difference checks
// and the monotone full-batch descent property. Gradients of the hinge term
// use the subgradient 0 at the kink.
inline double linear_objective(LossKind kind, const std::vector<SparseVector>& X,
                               const std::vector<int>& y,
                               const std::vector<double>& w, double b,
                               double lambda) {
    double loss = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        const double score = dot(w, X[i]) + b;
        if (kind == LossKind::log) {
            // -[y ln p + (1-y) ln(1-p)] = softplus(score) - y*score
            loss += softplus(score) - (y[i] == 1 ? score : 0.0);
        } else {
            const double margin = (y[i] == 1 ? 1.0 : -1.0) * score;
            loss += std::max(0.0, 1.0 - margin);
        }
    }
    loss /= static_cast<double>(X.size());
    double reg = 0.0;
    for (double v : w) reg += v * v;
    return loss + 0.5 * lambda * reg;
}

inline void linear_gradient(LossKind kind, const std::vector<SparseVector>& X,
                            const std::vector<int>& y,
                            const std::vector<double>& w, double b, double lambda,
                            std::vector<double>& grad_w, double& grad_b) {
    grad_w.assign(w.size(), 0.0);
    grad_b = 0.0;
    const double inv_n = 1.0 / static_cast<double>(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) {
        const double score = dot(w, X[i]) + b;
        double coeff = 0.0;
        if (kind == LossKind::log) {
            coeff = sigmoid(score) - (y[i] == 1 ? 1.0 : 0.0);
        } else {
            const double ytilde = y[i] == 1 ? 1.0 : -1.0;
            if (ytilde * score < 1.0) coeff = -ytilde;
        }
        if (coeff != 0.0) {
            for (const SparseEntry& e : X[i].entries)
                grad_w[e.index] += inv_n * coeff * e.value;
            grad_b += inv_n * coeff;
        }
    }
    for (std::size_t j = 0; j < w.size(); ++j) grad_w[j] += lambda * w[j];
}

// Reference single-sample update, spelled out exactly:
//   w <- (1 - eta*lambda) w - eta * dloss/dscore * x ; b <- b - eta * dloss/dscore
// The training loop computes the same recurrence with a lazy scale factor so
// the regularizer shrink stays O(nnz) per step; a unit test pins the two
// paths together.
inline void sgd_step(LinearModel& model, const SparseVector& x, int y, double eta) {
    const double score = dot(model.weights, x) + model.bias;
    double coeff = 0.0;
    if (model.loss_kind == LossKind::log) {
        coeff = sigmoid(score) - (y == 1 ? 1.0 : 0.0);
    } else {
        const double ytilde = y == 1 ? 1.0 : -1.0;
        if (ytilde * score < 1.0) coeff = -ytilde;
    }
    if (model.lambda > 0.0) {
        const double shrink = 1.0 - eta * model.lambda;
        for (double& v : model.weights) v *= shrink;
    }
    if (coeff != 0.0) {
        for (const SparseEntry& e : x.entries)
            model.weights[e.index] -= eta * coeff * e.value;
        model.bias -= eta * coeff;
    }
}

inline LinearModel train_linear(LossKind kind, const std::vector<SparseVector>& X,
                                const std::vector<int>& y, const TrainHyper& hyper) {
    detail::validate_training_input(X, y);
    if (!(hyper.learning_rate > 0.0)) raise(ErrorKind::UsageError, "learning_rate must be > 0");
    if (hyper.epochs < 1) raise(ErrorKind::UsageError, "epochs must be >= 1");

    LinearModel model;
    model.loss_kind = kind;
    model.lambda = hyper.lambda;
    model.weights.assign(X.front().dim, 0.0);
    model.bias = 0.0;

    std::vector<double>& w = model.weights;
    double scale = 1.0;  // effective weights = scale * w

    std::vector<std::size_t> order(X.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    Rng rng(hyper.seed);
    std::size_t step = 0;
    for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
        fisher_yates_shuffle(order, rng);
        for (std::size_t pos : order) {
            ++step;
            const SparseVector& x = X[pos];
            const double score = scale * dot(w, x) + model.bias;
            double eta = hyper.learning_rate;
            double coeff = 0.0;  // d loss / d score
            if (kind == LossKind::log) {
                coeff = sigmoid(score) - (y[pos] == 1 ? 1.0 : 0.0);
            } else {
                // Pegasos schedule; step 1 has shrink (t-1)/t = 0, which
                // zeroes the (already zero) weights.
                if (hyper.lambda > 0.0)
                    eta = 1.0 / (hyper.lambda * static_cast<double>(step));
                const double ytilde = y[pos] == 1 ? 1.0 : -1.0;
                if (ytilde * score < 1.0) coeff = -ytilde;
            }
            if (hyper.lambda > 0.0) {
                const double shrink = 1.0 - eta * hyper.lambda;
                if (shrink <= 0.0) {
                    std::fill(w.begin(), w.end(), 0.0);
                    scale = 1.0;
                } else {
                    scale *= shrink;
                }
            }
            if (coeff != 0.0) {
                for (const SparseEntry& e : x.entries)
                    w[e.index] -= eta * coeff * e.value / scale;
                model.bias -= eta * coeff;
            }
            if (scale < 1e-100) {
                for (double& v : w) v *= scale;
                scale = 1.0;
            }
        }
    }
    if (scale != 1.0)
        for (double& v : w) v *= scale;
    detail::check_finite(model.weights, model.bias);
    return model;
}

inline LinearModel train_logreg(const std::vector<SparseVector>& X,
                                const std::vector<int>& y, const TrainHyper& hyper) {
    return train_linear(LossKind::log, X, y, hyper);
}

inline LinearModel train_svm(const std::vector<SparseVector>& X,
                             const std::vector<int>& y, const TrainHyper& hyper) {
    return train_linear(LossKind::hinge, X, y, hyper);
}

}  // namespace fakenews
