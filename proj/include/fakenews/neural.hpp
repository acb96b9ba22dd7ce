#pragma once

// Feedforward MLP for binary classification: affine + ReLU hidden layers,
// sigmoid output, binary cross-entropy loss, optional L2 and inverted
// dropout (kept activations scaled by 1/(1-p) at train time, nothing at
// inference).
//
// Storage conventions (pinned; weight init draws follow storage order):
//   weights[0]  input layer, input-major: element (feature i, unit j) at
//               [i * h1 + j] — rows stay contiguous for sparse inputs.
//   weights[l]  l >= 1, out-major row-major: (out o, in i) at [o * in + i].
//   biases[l]   length layer_dims[l+1], initialized to zero.
// Weight init: uniform in +/- sqrt(6 / (fan_in + fan_out)).
// Dropout masks draw one uniform per hidden unit, layer by layer; a unit is
// kept when the draw is >= dropout_rate.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "fakenews/error.hpp"
#include "fakenews/prng.hpp"
#include "fakenews/sparse.hpp"

namespace fakenews {

struct MlpModel {
    std::vector<std::size_t> layer_dims;  // [input, hidden..., 1]
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
    double dropout_rate = 0.0;
    double lambda = 0.0;

    std::size_t input_dim() const { return layer_dims.front(); }
    std::size_t n_affine() const { return weights.size(); }
};

struct MlpHyper {
    std::vector<std::size_t> hidden_dims{128};
    double learning_rate = 0.1;
    std::size_t epochs = 10;
    std::size_t batch_size = 64;
    double dropout_rate = 0.0;
    double lambda = 0.0;
    std::uint64_t seed = 42;
};

inline MlpHyper mlp_baseline_preset() { return MlpHyper{}; }

inline MlpHyper mlp_regularized_preset() {
    MlpHyper hyper;
    hyper.dropout_rate = 0.5;
    hyper.lambda = 1e-4;
    return hyper;
}

enum class MlpMode { train, infer };

struct MlpCache {
    std::vector<std::size_t> layer_dims;       // stale-cache detection stamp
    SparseVector input;
    std::vector<std::vector<double>> z;        // pre-activations per affine layer
    std::vector<std::vector<double>> a;        // post relu (+dropout) activations, hidden layers
    std::vector<std::vector<double>> mask;     // dropout multiplier per hidden unit (0 or 1/(1-p))
    double probability = 0.5;
};

struct MlpGradients {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
};

namespace mlp_detail {

struct Buffers {
    std::vector<std::vector<double>> z, a, mask;

    void resize(const std::vector<std::size_t>& dims) {
        const std::size_t n_affine = dims.size() - 1;
        z.resize(n_affine);
        a.resize(n_affine);
        mask.resize(n_affine);
        for (std::size_t l = 0; l < n_affine; ++l) {
            z[l].assign(dims[l + 1], 0.0);
            a[l].assign(dims[l + 1], 0.0);
            mask[l].assign(dims[l + 1], 1.0);
        }
    }
};

inline double stable_sigmoid(double score) {
    if (score >= 0.0) return 1.0 / (1.0 + std::exp(-score));
    const double e = std::exp(score);
    return e / (1.0 + e);
}

// scale0 multiplies the effective first-layer weights (lazy L2 decay during
// training; 1.0 everywhere else).
inline double forward_core(const MlpModel& model, double scale0, const SparseVector& x,
                           MlpMode mode, Rng* rng, Buffers& buf) {
    const auto& dims = model.layer_dims;
    const std::size_t n_affine = dims.size() - 1;
    const std::size_t h1 = dims[1];

    std::vector<double>& z1 = buf.z[0];
    std::fill(z1.begin(), z1.end(), 0.0);
    for (const SparseEntry& e : x.entries) {
        const double* row = model.weights[0].data() + e.index * h1;
        for (std::size_t j = 0; j < h1; ++j) z1[j] += e.value * row[j];
    }
    for (std::size_t j = 0; j < h1; ++j) z1[j] = scale0 * z1[j] + model.biases[0][j];

    for (std::size_t l = 0; l < n_affine; ++l) {
        if (l > 0) {
            const std::size_t in = dims[l];
            const std::size_t out = dims[l + 1];
            const std::vector<double>& prev = buf.a[l - 1];
            for (std::size_t o = 0; o < out; ++o) {
                const double* row = model.weights[l].data() + o * in;
                double acc = model.biases[l][o];
                for (std::size_t i = 0; i < in; ++i) acc += row[i] * prev[i];
                buf.z[l][o] = acc;
            }
        }
        if (l + 1 == n_affine) break;  // output layer: no relu/dropout
        std::vector<double>& act = buf.a[l];
        std::vector<double>& mask = buf.mask[l];
        const double p = model.dropout_rate;
        for (std::size_t j = 0; j < dims[l + 1]; ++j) {
            double h = buf.z[l][j] > 0.0 ? buf.z[l][j] : 0.0;
            double m = 1.0;
            if (mode == MlpMode::train && p > 0.0) {
                m = rng->next_double() >= p ? 1.0 / (1.0 - p) : 0.0;
            }
            mask[j] = m;
            act[j] = h * m;
        }
    }
    return stable_sigmoid(buf.z[n_affine - 1][0]);
}

// Accumulates one sample's data gradients (no regularizer) into `grad`.
// Layer-0 rows touched by x are appended to `touched0` (with repeats).
inline void backward_core(const MlpModel& model, const Buffers& buf,
                          const SparseVector& x, double probability, int y,
                          MlpGradients& grad, std::vector<std::size_t>* touched0) {
    const auto& dims = model.layer_dims;
    const std::size_t n_affine = dims.size() - 1;

    std::vector<double> dz{probability - (y == 1 ? 1.0 : 0.0)};
    for (std::size_t l = n_affine; l-- > 0;) {
        const std::size_t out = dims[l + 1];
        for (std::size_t o = 0; o < out; ++o) grad.biases[l][o] += dz[o];
        if (l == 0) {
            const std::size_t h1 = dims[1];
            for (const SparseEntry& e : x.entries) {
                double* row = grad.weights[0].data() + e.index * h1;
                for (std::size_t j = 0; j < h1; ++j) row[j] += dz[j] * e.value;
                if (touched0) touched0->push_back(e.index);
            }
            break;
        }
        const std::size_t in = dims[l];
        const std::vector<double>& prev = buf.a[l - 1];
        std::vector<double> dz_prev(in, 0.0);
        for (std::size_t o = 0; o < out; ++o) {
            const double d = dz[o];
            double* grow = grad.weights[l].data() + o * in;
            const double* wrow = model.weights[l].data() + o * in;
            for (std::size_t i = 0; i < in; ++i) {
                grow[i] += d * prev[i];
                dz_prev[i] += d * wrow[i];
            }
        }
        for (std::size_t i = 0; i < in; ++i)
            dz_prev[i] *= buf.mask[l - 1][i] * (buf.z[l - 1][i] > 0.0 ? 1.0 : 0.0);
        dz = std::move(dz_prev);
    }
}

inline MlpGradients zero_gradients(const MlpModel& model) {
    MlpGradients grad;
    grad.weights.resize(model.n_affine());
    grad.biases.resize(model.n_affine());
    for (std::size_t l = 0; l < model.n_affine(); ++l) {
        grad.weights[l].assign(model.weights[l].size(), 0.0);
        grad.biases[l].assign(model.biases[l].size(), 0.0);
    }
    return grad;
}

inline double clipped_bce(double p, int y) {
    const double clipped = std::min(1.0 - 1e-12, std::max(1e-12, p));
    return y == 1 ? -std::log(clipped) : -std::log(1.0 - clipped);
}

}  // namespace mlp_detail

// Forward pass. Train mode needs an rng for the dropout masks; infer mode is
// deterministic and applies neither mask nor scaling. The cache out-param is
// what backward() consumes.
inline double forward(const MlpModel& model, const SparseVector& x, MlpMode mode,
                      Rng* rng, MlpCache* cache = nullptr) {
    check_dim(x, model.input_dim());
    if (mode == MlpMode::train && model.dropout_rate > 0.0 && rng == nullptr)
        raise(ErrorKind::UsageError, "train-mode forward with dropout needs an rng");

    mlp_detail::Buffers buf;
    buf.resize(model.layer_dims);
    const double p = mlp_detail::forward_core(model, 1.0, x, mode, rng, buf);
    if (cache) {
        cache->layer_dims = model.layer_dims;
        cache->input = x;
        cache->z = std::move(buf.z);
        cache->a = std::move(buf.a);
        cache->mask = std::move(buf.mask);
        cache->probability = p;
    }
    return p;
}

// Gradients of [log-loss + (lambda/2) sum ||W_l||^2] for the cached sample.
// The cached dropout masks are reused exactly; biases are unregularized.
inline MlpGradients backward(const MlpModel& model, const MlpCache& cache, int y) {
    if (cache.layer_dims != model.layer_dims)
        raise(ErrorKind::StaleCache, "cache does not match the model's layer shapes");
    mlp_detail::Buffers buf;
    buf.z = cache.z;
    buf.a = cache.a;
    buf.mask = cache.mask;

    MlpGradients grad = mlp_detail::zero_gradients(model);
    mlp_detail::backward_core(model, buf, cache.input, cache.probability, y, grad,
                              nullptr);
    if (model.lambda > 0.0)
        for (std::size_t l = 0; l < model.n_affine(); ++l)
            for (std::size_t i = 0; i < grad.weights[l].size(); ++i)
                grad.weights[l][i] += model.lambda * model.weights[l][i];
    return grad;
}

// Mean clipped BCE over the data plus (lambda/2) sum ||W_l||^2, evaluated in
// infer mode. The finite-difference oracle differentiates this.
inline double mlp_objective(const MlpModel& model, const std::vector<SparseVector>& X,
                            const std::vector<int>& y) {
    mlp_detail::Buffers buf;
    buf.resize(model.layer_dims);
    double loss = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        const double p =
            mlp_detail::forward_core(model, 1.0, X[i], MlpMode::infer, nullptr, buf);
        loss += mlp_detail::clipped_bce(p, y[i]);
    }
    loss /= static_cast<double>(X.size());
    double reg = 0.0;
    for (const auto& layer : model.weights)
        for (double w : layer) reg += w * w;
    return loss + 0.5 * model.lambda * reg;
}

inline MlpModel train_mlp(const std::vector<SparseVector>& X, const std::vector<int>& y,
                          const MlpHyper& hyper,
                          std::vector<double>* epoch_loss_out = nullptr) {
    if (X.size() != y.size())
        raise(ErrorKind::LengthMismatch, "feature and label counts differ");
    if (X.size() < 2) raise(ErrorKind::EmptyCorpus, "need at least 2 training examples");
    for (const SparseVector& x : X) check_dim(x, X.front().dim);
    bool saw[2] = {false, false};
    for (int label : y) saw[label == 1] = true;
    if (!saw[0] || !saw[1])
        raise(ErrorKind::SingleClassTraining,
              "training data contains a single class; both labels are required");
    if (!(hyper.learning_rate > 0.0)) raise(ErrorKind::UsageError, "learning_rate must be > 0");
    if (hyper.epochs < 1) raise(ErrorKind::UsageError, "epochs must be >= 1");
    if (hyper.batch_size < 1) raise(ErrorKind::UsageError, "batch_size must be >= 1");
    if (!(hyper.dropout_rate >= 0.0 && hyper.dropout_rate < 1.0))
        raise(ErrorKind::UsageError, "dropout_rate must lie in [0, 1)");
    if (hyper.hidden_dims.empty())
        raise(ErrorKind::UsageError, "at least one hidden layer is required");
    for (std::size_t h : hyper.hidden_dims)
        if (h == 0) raise(ErrorKind::UsageError, "hidden layer sizes must be >= 1");

    MlpModel model;
    model.layer_dims.push_back(X.front().dim);
    for (std::size_t h : hyper.hidden_dims) model.layer_dims.push_back(h);
    model.layer_dims.push_back(1);
    model.dropout_rate = hyper.dropout_rate;
    model.lambda = hyper.lambda;

    Rng rng(hyper.seed);
    const std::size_t n_affine = model.layer_dims.size() - 1;
    model.weights.resize(n_affine);
    model.biases.resize(n_affine);
    for (std::size_t l = 0; l < n_affine; ++l) {
        const std::size_t fan_in = model.layer_dims[l];
        const std::size_t fan_out = model.layer_dims[l + 1];
        const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        model.weights[l].resize(fan_in * fan_out);
        for (double& w : model.weights[l]) w = rng.next_double(-bound, bound);
        model.biases[l].assign(fan_out, 0.0);
    }

    const std::size_t n = X.size();
    const std::size_t h1 = model.layer_dims[1];
    double scale0 = 1.0;  // effective weights[0] = scale0 * stored
    const double eta = hyper.learning_rate;
    const double lambda = hyper.lambda;

    mlp_detail::Buffers buf;
    buf.resize(model.layer_dims);
    MlpGradients grad = mlp_detail::zero_gradients(model);
    std::vector<std::size_t> touched0;

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
        fisher_yates_shuffle(order, rng);
        for (std::size_t start = 0; start < n; start += hyper.batch_size) {
            const std::size_t end = std::min(n, start + hyper.batch_size);
            const double inv_b = 1.0 / static_cast<double>(end - start);

            touched0.clear();
            double batch_loss = 0.0;
            for (std::size_t pos = start; pos < end; ++pos) {
                const SparseVector& x = X[order[pos]];
                const int label = y[order[pos]];
                const double p = mlp_detail::forward_core(model, scale0, x,
                                                          MlpMode::train, &rng, buf);
                // clipping would mask a NaN probability, so test p directly
                if (!std::isfinite(p) || !std::isfinite(batch_loss)) {
                    std::ostringstream msg;
                    msg << "training diverged (non-finite loss) at epoch " << epoch
                        << ", batch starting at sample " << start;
                    raise(ErrorKind::DivergedTraining, msg.str());
                }
                batch_loss += mlp_detail::clipped_bce(p, label);
                mlp_detail::backward_core(model, buf, x, p, label, grad, &touched0);
            }

            // Layer 0: multiplicative decay via scale0, gradient applied to
            // touched rows only (gradient of the other rows is zero).
            if (lambda > 0.0) scale0 *= 1.0 - eta * lambda;
            for (std::size_t r : touched0) {
                double* wrow = model.weights[0].data() + r * h1;
                double* grow = grad.weights[0].data() + r * h1;
                for (std::size_t j = 0; j < h1; ++j) {
                    wrow[j] -= eta * inv_b * grow[j] / scale0;
                    grow[j] = 0.0;
                }
            }
            for (std::size_t j = 0; j < h1; ++j) {
                model.biases[0][j] -= eta * inv_b * grad.biases[0][j];
                grad.biases[0][j] = 0.0;
            }
            for (std::size_t l = 1; l < n_affine; ++l) {
                for (std::size_t i = 0; i < model.weights[l].size(); ++i) {
                    model.weights[l][i] -=
                        eta * (inv_b * grad.weights[l][i] + lambda * model.weights[l][i]);
                    grad.weights[l][i] = 0.0;
                }
                for (std::size_t o = 0; o < model.biases[l].size(); ++o) {
                    model.biases[l][o] -= eta * inv_b * grad.biases[l][o];
                    grad.biases[l][o] = 0.0;
                }
            }
            if (scale0 < 1e-100) {
                for (double& w : model.weights[0]) w *= scale0;
                scale0 = 1.0;
            }
        }
        if (epoch_loss_out) {
            MlpModel snapshot = model;
            if (scale0 != 1.0)
                for (double& w : snapshot.weights[0]) w *= scale0;
            epoch_loss_out->push_back(mlp_objective(snapshot, X, y));
        }
    }

    if (scale0 != 1.0)
        for (double& w : model.weights[0]) w *= scale0;
    for (const auto& layer : model.weights)
        for (double w : layer)
            if (!std::isfinite(w))
                raise(ErrorKind::DivergedTraining, "non-finite parameter after training");
    return model;
}

struct MlpPrediction {
    int label = 1;
    double probability = 0.5;
};

// Infer-mode forward; label 1 iff probability >= 0.5 (tie -> 1).
inline MlpPrediction predict_mlp(const MlpModel& model, const SparseVector& x) {
    MlpPrediction out;
    out.probability = forward(model, x, MlpMode::infer, nullptr);
    out.label = out.probability >= 0.5 ? 1 : 0;
    return out;
}

}  // namespace fakenews
