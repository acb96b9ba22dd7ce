#pragma once

// End-to-end benchmark: ingest -> clean -> encode -> split -> vectorize ->
// train every enabled model on identical train vectors -> evaluate on
// identical test vectors -> persist artifacts. Fully deterministic for a
// given config; wall-clock timings are the only nondeterministic outputs
// and never reach the machine-readable files.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fakenews/config.hpp"
#include "fakenews/corpus.hpp"
#include "fakenews/error.hpp"
#include "fakenews/forest.hpp"
#include "fakenews/linear.hpp"
#include "fakenews/metrics.hpp"
#include "fakenews/model_io.hpp"
#include "fakenews/neural.hpp"
#include "fakenews/tfidf.hpp"

namespace fakenews {

inline const char* display_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::logreg: return "Logistic Regression";
        case ModelKind::svm: return "SVM";
        case ModelKind::forest: return "Random Forest";
        case ModelKind::mlp_baseline: return "Neural Networks";
        case ModelKind::mlp_regularized: return "Neural Networks (regularised)";
    }
    return "?";
}

struct DatasetStats {
    std::size_t rows = 0;          // data rows ingested
    std::size_t dropped = 0;       // removed by the missing-value pass
    LabelCounts distribution;      // after cleaning/encoding
};

struct ModelOutcome {
    ModelKind kind = ModelKind::logreg;
    MetricsReport report;
    std::string artifact_path;
    std::vector<int> test_predictions;
};

struct ModelFailure {
    ModelKind kind;
    std::string message;
};

struct BenchmarkResult {
    DatasetStats stats;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    std::vector<ModelOutcome> outcomes;   // in enabled-model order
    std::vector<ModelFailure> failures;   // models that threw; empty on a clean run
    RunConfig config;
    double total_seconds = 0.0;
};

namespace bench_detail {

// Seed salt so train-split subsampling never aliases a model's own stream.
inline constexpr std::uint64_t kSampleSalt = 0x73616d706c652d31ULL;

template <typename F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.kind(), std::string(name) + ": " + e.what());
    }
}

inline Corpus subsample(const Corpus& corpus, std::size_t n, std::uint64_t seed) {
    if (n == 0 || n >= corpus.size()) return corpus;
    std::vector<std::size_t> order(corpus.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(seed ^ kSampleSalt);
    fisher_yates_shuffle(order, rng);
    order.resize(n);
    std::sort(order.begin(), order.end());
    Corpus out;
    out.source = corpus.source;
    out.labeled = corpus.labeled;
    for (std::size_t i : order) out.documents.push_back(corpus.documents[i]);
    return out;
}

inline std::vector<int> labels_of(const Corpus& corpus) {
    std::vector<int> y;
    y.reserve(corpus.size());
    for (const Document& doc : corpus.documents) y.push_back(*doc.label);
    return y;
}

inline std::vector<std::pair<std::string, std::string>> linear_snapshot(
    const TrainHyper& hyper) {
    return {{"learning_rate", io_detail::fmt_real(hyper.learning_rate)},
            {"epochs", std::to_string(hyper.epochs)},
            {"lambda", io_detail::fmt_real(hyper.lambda)},
            {"seed", std::to_string(hyper.seed)}};
}

inline std::vector<std::pair<std::string, std::string>> mlp_snapshot(
    const MlpHyper& hyper) {
    std::string hidden;
    for (std::size_t h : hyper.hidden_dims)
        hidden += (hidden.empty() ? "" : ",") + std::to_string(h);
    return {{"hidden", hidden},
            {"learning_rate", io_detail::fmt_real(hyper.learning_rate)},
            {"epochs", std::to_string(hyper.epochs)},
            {"batch_size", std::to_string(hyper.batch_size)},
            {"dropout", io_detail::fmt_real(hyper.dropout_rate)},
            {"lambda", io_detail::fmt_real(hyper.lambda)},
            {"seed", std::to_string(hyper.seed)}};
}

}  // namespace bench_detail

// Trains one model kind on prepared vectors and returns the ready-to-save
// artifact. Shared by the benchmark loop and the CLI train command.
inline ModelArtifact train_model_kind(ModelKind kind, const RunConfig& config,
                                      const TfidfModel& tfidf,
                                      const std::vector<SparseVector>& X,
                                      const std::vector<int>& y) {
    ModelArtifact artifact;
    artifact.kind = kind;
    artifact.tfidf = tfidf;
    switch (kind) {
        case ModelKind::logreg:
            artifact.model = train_logreg(X, y, config.logreg);
            artifact.config = bench_detail::linear_snapshot(config.logreg);
            break;
        case ModelKind::svm:
            artifact.model = train_svm(X, y, config.svm);
            artifact.config = bench_detail::linear_snapshot(config.svm);
            break;
        case ModelKind::forest: {
            artifact.model = train_forest(X, y, config.forest, config.forest_seed);
            const ForestHyper& h = config.forest;
            artifact.config = {{"n_trees", std::to_string(h.n_trees)},
                               {"max_depth", std::to_string(h.max_depth)},
                               {"features_per_split", std::to_string(h.n_features_per_split)},
                               {"seed", std::to_string(config.forest_seed)}};
            break;
        }
        case ModelKind::mlp_baseline:
            artifact.model = train_mlp(X, y, config.mlp_baseline);
            artifact.config = bench_detail::mlp_snapshot(config.mlp_baseline);
            break;
        case ModelKind::mlp_regularized:
            artifact.model = train_mlp(X, y, config.mlp_regularized);
            artifact.config = bench_detail::mlp_snapshot(config.mlp_regularized);
            break;
    }
    return artifact;
}

inline int artifact_predict_vector(const ModelArtifact& artifact, const SparseVector& x) {
    if (const auto* linear = std::get_if<LinearModel>(&artifact.model))
        return predict(*linear, x);
    if (const auto* forest = std::get_if<ForestModel>(&artifact.model))
        return predict_forest(*forest, x).label;
    return predict_mlp(std::get<MlpModel>(artifact.model), x).label;
}

inline BenchmarkResult run_benchmark(const RunConfig& config) {
    using bench_detail::stage;
    namespace fs = std::filesystem;
    const auto t_start = std::chrono::steady_clock::now();

    BenchmarkResult result;
    result.config = config;

    const Corpus raw = stage("ingest", [&] {
        return load_csv(config.dataset_path, config.columns);
    });
    const Corpus cleaned = stage("clean", [&] { return drop_missing(raw); });
    const Corpus encoded = stage("encode", [&] {
        return encode_labels(cleaned, config.labels);
    });
    result.stats.rows = raw.size();
    result.stats.dropped = raw.size() - cleaned.size();
    result.stats.distribution = label_distribution(encoded);

    CorpusSplit parts = stage("split", [&] { return split(encoded, config.split); });
    parts.train = bench_detail::subsample(parts.train, config.sample, config.seed);
    result.train_size = parts.train.size();
    result.test_size = parts.test.size();

    const TfidfModel tfidf = stage("vectorize", [&] {
        return fit_tfidf(parts.train, config.min_df, config.normalize);
    });
    const std::vector<SparseVector> X_train = transform_corpus(tfidf, parts.train);
    const std::vector<SparseVector> X_test = transform_corpus(tfidf, parts.test);
    const std::vector<int> y_train = bench_detail::labels_of(parts.train);
    const std::vector<int> y_test = bench_detail::labels_of(parts.test);

    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec)
        raise(ErrorKind::IoError,
              "cannot create output directory " + config.output_dir + ": " + ec.message());

    for (ModelKind kind : config.enabled) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            ModelArtifact artifact = train_model_kind(kind, config, tfidf, X_train, y_train);

            ModelOutcome outcome;
            outcome.kind = kind;
            outcome.test_predictions.reserve(X_test.size());
            for (const SparseVector& x : X_test)
                outcome.test_predictions.push_back(artifact_predict_vector(artifact, x));
            outcome.report =
                metrics(confusion(y_test, outcome.test_predictions), display_name(kind));
            outcome.report.wall_time_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

            outcome.artifact_path =
                (fs::path(config.output_dir) / (std::string(to_string(kind)) + ".model"))
                    .string();
            save_model(artifact, outcome.artifact_path);
            result.outcomes.push_back(std::move(outcome));
        } catch (const Error& e) {
            result.failures.push_back({kind, e.what()});
        }
    }

    if (result.outcomes.empty() && !result.failures.empty()) {
        std::string message = "every enabled model failed:";
        for (const ModelFailure& f : result.failures)
            message += std::string(" [") + to_string(f.kind) + "] " + f.message;
        raise(ErrorKind::PartialFailure, message);
    }

    result.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

}  // namespace fakenews
