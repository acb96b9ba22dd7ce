// Command-line surface for the fake/real news toolkit.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 runtime failure.
// Informational output goes to stdout, diagnostics to stderr. Flags override
// config-file values, which override built-in defaults; benchmark mode
// prints where each effective setting came from.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fakenews/fakenews.hpp"

namespace fn = fakenews;

namespace {

const std::vector<std::string> kModelKinds = {"logreg", "svm", "forest", "mlp-baseline",
                                              "mlp-regularized"};

struct SchemaFlags {
    std::string title_column = "title";
    std::string text_column = "text";
    std::string label_column = "label";
    std::string real_labels = "real, 1";
    std::string fake_labels = "fake, 0";

    void attach(CLI::App* cmd) {
        cmd->add_option("--title-column", title_column, "CSV column holding the title")
            ->capture_default_str();
        cmd->add_option("--text-column", text_column, "CSV column holding the body text")
            ->capture_default_str();
        cmd->add_option("--label-column", label_column, "CSV column holding the label")
            ->capture_default_str();
        cmd->add_option("--real-labels", real_labels,
                        "comma-separated label values mapped to 1 (real)")
            ->capture_default_str();
        cmd->add_option("--fake-labels", fake_labels,
                        "comma-separated label values mapped to 0 (fake)")
            ->capture_default_str();
    }

    fn::ColumnMapping columns() const {
        return fn::ColumnMapping{title_column, text_column, label_column};
    }

    fn::LabelMapping labels() const {
        fn::LabelMapping mapping;
        auto add = [&](const std::string& csv, int value) {
            std::istringstream in(csv);
            std::string item;
            while (std::getline(in, item, ','))
                if (!fn::trim(item).empty()) mapping[fn::trim(item)] = value;
        };
        add(real_labels, 1);
        add(fake_labels, 0);
        return mapping;
    }
};

fn::Corpus ingest_encoded(const std::string& path, const SchemaFlags& schema,
                          std::size_t* rows_out = nullptr,
                          std::size_t* dropped_out = nullptr) {
    const fn::Corpus raw = fn::load_csv(path, schema.columns());
    const fn::Corpus cleaned = fn::drop_missing(raw);
    if (rows_out) *rows_out = raw.size();
    if (dropped_out) *dropped_out = raw.size() - cleaned.size();
    return fn::encode_labels(cleaned, schema.labels());
}

void print_distribution_line(const fn::LabelCounts& counts) {
    const double total = counts.total() ? static_cast<double>(counts.total()) : 1.0;
    std::cout << "real: " << counts.real << " ("
              << fn::percent(static_cast<double>(counts.real) / total) << ") fake: "
              << counts.fake << " ("
              << fn::percent(static_cast<double>(counts.fake) / total) << ")\n";
}

void print_report(const fn::MetricsReport& r, const char* prefix) {
    std::cout << prefix << " accuracy: " << fn::percent(r.accuracy)
              << " precision: " << fn::percent(r.precision)
              << " recall: " << fn::percent(r.recall) << " f1: " << fn::percent(r.f1)
              << " (tp=" << r.confusion.tp << " fp=" << r.confusion.fp
              << " fn=" << r.confusion.fn << " tn=" << r.confusion.tn << ")\n";
}

fn::ModelKind kind_from_flag(const std::string& name) {
    return fn::parse_model_kind(name);
}

struct Override {
    std::optional<double> learning_rate, lambda, dropout, test_fraction;
    std::optional<std::uint64_t> epochs, batch_size, trees, max_depth, features_per_split,
        min_df, seed;
    std::optional<std::string> hidden;

    void attach(CLI::App* cmd) {
        cmd->add_option("--learning-rate", learning_rate, "SGD learning rate");
        cmd->add_option("--lambda", lambda, "L2 regularization strength");
        cmd->add_option("--epochs", epochs, "training epochs");
        cmd->add_option("--batch-size", batch_size, "MLP mini-batch size");
        cmd->add_option("--dropout", dropout, "MLP dropout rate in [0,1)");
        cmd->add_option("--hidden", hidden, "MLP hidden layer sizes, comma-separated");
        cmd->add_option("--trees", trees, "forest size");
        cmd->add_option("--max-depth", max_depth, "forest tree depth limit");
        cmd->add_option("--features-per-split", features_per_split,
                        "forest features sampled per split (0 = ceil(sqrt(dim)))");
        cmd->add_option("--min-df", min_df, "vectorizer minimum document frequency");
        cmd->add_option("--test-fraction", test_fraction, "held-out test fraction");
        cmd->add_option("--seed", seed, "global seed (split keeps its own [split] seed)");
    }

    void apply(fn::RunConfig& config, fn::ModelKind kind) const {
        if (min_df) config.min_df = *min_df;
        if (test_fraction) config.split.test_fraction = *test_fraction;
        if (seed) {
            config.seed = *seed;
            config.logreg.seed = config.svm.seed = *seed;
            config.forest_seed = *seed;
            config.mlp_baseline.seed = config.mlp_regularized.seed = *seed;
        }
        auto apply_linear = [&](fn::TrainHyper& h) {
            if (learning_rate) h.learning_rate = *learning_rate;
            if (lambda) h.lambda = *lambda;
            if (epochs) h.epochs = *epochs;
        };
        auto apply_mlp = [&](fn::MlpHyper& h) {
            if (learning_rate) h.learning_rate = *learning_rate;
            if (lambda) h.lambda = *lambda;
            if (epochs) h.epochs = *epochs;
            if (batch_size) h.batch_size = *batch_size;
            if (dropout) h.dropout_rate = *dropout;
            if (hidden) {
                h.hidden_dims.clear();
                std::istringstream in(*hidden);
                std::string item;
                while (std::getline(in, item, ','))
                    h.hidden_dims.push_back(std::stoull(fn::trim(item)));
            }
        };
        switch (kind) {
            case fn::ModelKind::logreg: apply_linear(config.logreg); break;
            case fn::ModelKind::svm: apply_linear(config.svm); break;
            case fn::ModelKind::forest:
                if (trees) config.forest.n_trees = *trees;
                if (max_depth) config.forest.max_depth = *max_depth;
                if (features_per_split) config.forest.n_features_per_split = *features_per_split;
                break;
            case fn::ModelKind::mlp_baseline: apply_mlp(config.mlp_baseline); break;
            case fn::ModelKind::mlp_regularized: apply_mlp(config.mlp_regularized); break;
        }
    }
};

struct PreparedData {
    fn::TfidfModel tfidf;
    std::vector<fn::SparseVector> x_train, x_test;
    std::vector<int> y_train, y_test;
    std::size_t rows = 0, dropped = 0;
};

PreparedData prepare(const fn::RunConfig& config) {
    PreparedData data;
    const fn::Corpus raw = fn::load_csv(config.dataset_path, config.columns);
    const fn::Corpus cleaned = fn::drop_missing(raw);
    data.rows = raw.size();
    data.dropped = raw.size() - cleaned.size();
    const fn::Corpus encoded = fn::encode_labels(cleaned, config.labels);
    fn::CorpusSplit parts = fn::split(encoded, config.split);
    parts.train = fn::bench_detail::subsample(parts.train, config.sample, config.seed);
    data.tfidf = fn::fit_tfidf(parts.train, config.min_df, config.normalize);
    data.x_train = fn::transform_corpus(data.tfidf, parts.train);
    data.x_test = fn::transform_corpus(data.tfidf, parts.test);
    data.y_train = fn::bench_detail::labels_of(parts.train);
    data.y_test = fn::bench_detail::labels_of(parts.test);
    return data;
}

int run_ingest(const std::string& data, const SchemaFlags& schema, const std::string& out) {
    std::size_t rows = 0, dropped = 0;
    const fn::Corpus corpus = ingest_encoded(data, schema, &rows, &dropped);
    std::cout << "total rows: " << rows << "\n";
    std::cout << "dropped rows: " << dropped << "\n";
    print_distribution_line(fn::label_distribution(corpus));
    if (!out.empty()) {
        std::vector<fn::CsvRecord> records;
        records.push_back({"id", "title", "text", "label"});
        for (const fn::Document& doc : corpus.documents)
            records.push_back({std::to_string(doc.id), doc.title, doc.body,
                               std::to_string(*doc.label)});
        std::ofstream file(out, std::ios::binary | std::ios::trunc);
        if (!file) fn::raise(fn::ErrorKind::IoError, "cannot write " + out);
        fn::write_csv(file, records);
        std::cout << "wrote " << out << " (" << corpus.size() << " rows)\n";
    }
    return 0;
}

int run_stats(const std::string& data, const SchemaFlags& schema) {
    std::size_t rows = 0, dropped = 0;
    const fn::Corpus corpus = ingest_encoded(data, schema, &rows, &dropped);
    std::cout << "total rows: " << rows << "\n";
    std::cout << "dropped rows: " << dropped << "\n";
    print_distribution_line(fn::label_distribution(corpus));
    return 0;
}

fn::RunConfig base_config(const std::string& config_path, const SchemaFlags* schema,
                          const std::string& data) {
    fn::RunConfig config = config_path.empty() ? fn::default_run_config()
                                               : fn::load_run_config(config_path);
    if (schema) {
        config.columns = schema->columns();
        config.labels = schema->labels();
    }
    if (!data.empty()) config.dataset_path = data;
    return config;
}

int run_train(const std::string& data, const std::string& config_path,
              const std::string& model_name, const SchemaFlags& schema,
              const Override& overrides, std::size_t sample, std::string out) {
    const fn::ModelKind kind = kind_from_flag(model_name);
    fn::RunConfig config = base_config(config_path, &schema, data);
    config.sample = sample;
    overrides.apply(config, kind);

    const PreparedData prepared = prepare(config);
    fn::ModelArtifact artifact =
        fn::train_model_kind(kind, config, prepared.tfidf, prepared.x_train,
                             prepared.y_train);

    auto evaluate = [&](const std::vector<fn::SparseVector>& X, const std::vector<int>& y) {
        std::vector<int> pred;
        pred.reserve(X.size());
        for (const fn::SparseVector& x : X)
            pred.push_back(fn::artifact_predict_vector(artifact, x));
        return fn::metrics(fn::confusion(y, pred), fn::display_name(kind));
    };
    std::cout << "model: " << fn::to_string(kind) << "\n";
    std::cout << "train size: " << prepared.x_train.size()
              << " test size: " << prepared.x_test.size()
              << " vocabulary: " << prepared.tfidf.dim() << "\n";
    print_report(evaluate(prepared.x_train, prepared.y_train), "train");
    print_report(evaluate(prepared.x_test, prepared.y_test), "test");

    if (out.empty()) out = std::string(fn::to_string(kind)) + ".model";
    fn::save_model(artifact, out);
    std::cout << "artifact: " << out << "\n";
    return 0;
}

int run_evaluate(const std::string& model_path, const std::string& data,
                 const SchemaFlags& schema) {
    const fn::ModelArtifact artifact = fn::load_model(model_path);
    const fn::Corpus corpus = ingest_encoded(data, schema);
    if (corpus.empty()) fn::raise(fn::ErrorKind::EmptyCorpus, data + ": no usable rows");
    std::vector<int> truth, pred;
    truth.reserve(corpus.size());
    pred.reserve(corpus.size());
    for (const fn::Document& doc : corpus.documents) {
        truth.push_back(*doc.label);
        pred.push_back(fn::artifact_predict(artifact, doc).label);
    }
    std::cout << "model: " << fn::to_string(artifact.kind) << " (" << model_path << ")\n";
    std::cout << "documents: " << corpus.size() << "\n";
    print_report(fn::metrics(fn::confusion(truth, pred), fn::display_name(artifact.kind)),
                 "eval");
    return 0;
}

int run_classify(const std::string& model_path, const std::string& text,
                 const std::string& input) {
    const fn::ModelArtifact artifact = fn::load_model(model_path);
    std::vector<std::string> texts;
    if (!text.empty()) texts.push_back(text);
    if (!input.empty()) {
        std::ifstream in(input);
        if (!in) fn::raise(fn::ErrorKind::FileNotFound, "cannot open input file: " + input);
        std::string line;
        while (std::getline(in, line)) texts.push_back(line);
    }
    if (texts.empty())
        fn::raise(fn::ErrorKind::UsageError, "classify needs --text or --input");

    char score[32];
    for (std::size_t i = 0; i < texts.size(); ++i) {
        fn::Document doc;
        doc.id = i;
        doc.body = texts[i];
        const fn::ScoredPrediction pred = fn::artifact_predict(artifact, doc);
        std::snprintf(score, sizeof(score), "%.6f", pred.score);
        std::cout << (pred.label == 1 ? "REAL" : "FAKE") << "\t" << score << "\n";
    }
    return 0;
}

void print_effective_settings(const fn::RunConfig& config, const std::string& config_path,
                              bool sample_from_flag, bool out_from_flag,
                              bool seed_from_flag) {
    const std::string from_config = config_path.empty() ? "default" : "config";
    std::cout << "settings (flag > config > default):\n";
    std::cout << "  config file: " << (config_path.empty() ? "<none>" : config_path) << "\n";
    std::cout << "  dataset: " << config.dataset_path << " [" << from_config << "]\n";
    std::cout << "  test_fraction: " << config.split.test_fraction << " [" << from_config
              << "]  split seed: " << config.split.seed << " [" << from_config << "]\n";
    std::cout << "  min_df: " << config.min_df << " [" << from_config << "]\n";
    std::cout << "  global seed: " << config.seed << " ["
              << (seed_from_flag ? "flag" : from_config) << "]\n";
    std::cout << "  sample: "
              << (config.sample ? std::to_string(config.sample) : std::string("full"))
              << " [" << (sample_from_flag ? "flag" : "default") << "]\n";
    std::cout << "  output dir: " << config.output_dir << " ["
              << (out_from_flag ? "flag" : from_config) << "]\n";
    std::cout << "  models:";
    for (fn::ModelKind kind : config.enabled) std::cout << ' ' << fn::to_string(kind);
    std::cout << "\n";
}

int run_benchmark_cmd(const std::string& config_path, std::size_t sample,
                      const std::string& out_dir, std::optional<std::uint64_t> seed,
                      const std::string& format) {
    fn::RunConfig config = base_config(config_path, nullptr, "");
    if (sample) config.sample = sample;
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (seed) {
        config.seed = *seed;
        config.logreg.seed = config.svm.seed = *seed;
        config.forest_seed = *seed;
        config.mlp_baseline.seed = config.mlp_regularized.seed = *seed;
    }
    print_effective_settings(config, config_path, sample != 0, !out_dir.empty(),
                             seed.has_value());

    const fn::BenchmarkResult result = fn::run_benchmark(config);

    std::cout << "dataset rows: " << result.stats.rows
              << " dropped: " << result.stats.dropped << "\n";
    print_distribution_line(result.stats.distribution);
    std::cout << "train size: " << result.train_size << " test size: " << result.test_size
              << "\n\n";

    std::vector<fn::MetricsReport> reports;
    for (const fn::ModelOutcome& outcome : result.outcomes) reports.push_back(outcome.report);
    const fn::ComparisonTable table = fn::compare(reports);
    if (format == "md")
        std::cout << fn::render_markdown(table);
    else if (format == "records")
        std::cout << fn::results_records(result);
    else
        std::cout << fn::render_text(table);
    std::cout << "\n";

    for (const fn::ModelOutcome& outcome : result.outcomes)
        std::cout << "time: " << outcome.report.model_name << " "
                  << fn::report_detail::fmt(outcome.report.wall_time_seconds, 2) << "s\n";
    std::cout << "time: total " << fn::report_detail::fmt(result.total_seconds, 2) << "s\n";

    const auto written = fn::emit_report(result, config.output_dir);
    for (const std::string& path : written) std::cout << "wrote " << path << "\n";

    for (const fn::ModelFailure& failure : result.failures)
        std::cerr << "model failed: " << fn::to_string(failure.kind) << ": "
                  << failure.message << "\n";
    return result.failures.empty() ? 0 : 3;
}

int run_report(const std::string& results_path, const std::string& out_dir,
               const std::string& format) {
    const fn::ParsedRecords parsed = fn::parse_results_records(results_path);
    const fn::ComparisonTable table = fn::compare(parsed.reports);
    if (format == "md")
        std::cout << fn::render_markdown(table);
    else if (format != "records")
        std::cout << fn::render_text(table);

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        fn::raise(fn::ErrorKind::IoError, "cannot create output directory " + out_dir);
    auto emit = [&](const char* name, const std::string& content) {
        const std::string path = (fs::path(out_dir) / name).string();
        fn::report_detail::write_file(path, content);
        std::cout << "wrote " << path << "\n";
    };
    emit("comparison.md", fn::render_markdown(table));
    emit("comparison.tsv", fn::comparison_tsv(table));
    emit("comparison.svg", fn::comparison_svg(table));
    if (parsed.has_distribution) {
        emit("distribution.tsv", fn::distribution_tsv(parsed.distribution));
        emit("distribution.svg", fn::distribution_svg(parsed.distribution));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fake/real news text classification toolkit"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help message and exit");
    app.set_help_all_flag("--help-all", "print help for every subcommand");

    std::string data, config_path, model_name, model_path, out, text, input, results_path;
    std::string format = "text";
    std::size_t sample = 0;
    std::optional<std::uint64_t> seed_flag;
    SchemaFlags schema;
    Override overrides;

    auto* ingest = app.add_subcommand("ingest", "load, clean and encode a dataset");
    ingest->add_option("--data", data, "dataset CSV path")->required();
    schema.attach(ingest);
    ingest->add_option("--out", out, "write the cleaned, encoded corpus as CSV");

    auto* stats = app.add_subcommand("stats", "print label distribution and drop counts");
    stats->add_option("--data", data, "dataset CSV path")->required();
    schema.attach(stats);

    auto* train = app.add_subcommand("train", "train one model and save its artifact");
    train->add_option("--data", data, "dataset CSV path (overrides config)");
    train->add_option("--config", config_path, "run config file");
    train->add_option("--model", model_name, "model kind")
        ->required()
        ->check(CLI::IsMember(kModelKinds));
    train->add_option("--sample", sample, "subsample the training split to N documents (0 = full)")->capture_default_str();
    train->add_option("--out", out, "artifact output path (default <kind>.model)");
    schema.attach(train);
    overrides.attach(train);

    auto* evaluate = app.add_subcommand("evaluate", "evaluate a saved model on a labeled CSV");
    evaluate->add_option("--model", model_path, "model artifact path")->required();
    evaluate->add_option("--data", data, "dataset CSV path")->required();
    schema.attach(evaluate);

    auto* classify = app.add_subcommand("classify", "classify raw text with a saved model");
    classify->add_option("--model", model_path, "model artifact path")->required();
    classify->add_option("--text", text, "single text to classify");
    classify->add_option("--input", input, "file with one document per line");

    auto* benchmark = app.add_subcommand(
        "benchmark", "run the full multi-model pipeline from a config file");
    benchmark->add_option("config", config_path, "run config file")->required();
    benchmark->add_option("--sample", sample, "subsample the training split to N documents (0 = full)")->capture_default_str();
    benchmark->add_option("--out", out, "output directory (overrides config)");
    benchmark->add_option("--seed", seed_flag, "override the global seed");
    benchmark->add_option("--format", format, "stdout table format")
        ->check(CLI::IsMember({"text", "md", "records"}))
        ->capture_default_str();

    auto* report = app.add_subcommand("report", "re-emit report files from results.jsonl");
    report->add_option("--results", results_path, "results.jsonl path")->required();
    report->add_option("--out", out, "output directory")->required();
    report->add_option("--format", format, "stdout table format")
        ->check(CLI::IsMember({"text", "md", "records"}))
        ->capture_default_str();

    for (const auto& sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->set_help_flag("--help", "print this help message and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (ingest->parsed()) return run_ingest(data, schema, out);
        if (stats->parsed()) return run_stats(data, schema);
        if (train->parsed())
            return run_train(data, config_path, model_name, schema, overrides, sample, out);
        if (evaluate->parsed()) return run_evaluate(model_path, data, schema);
        if (classify->parsed()) return run_classify(model_path, text, input);
        if (benchmark->parsed())
            return run_benchmark_cmd(config_path, sample, out, seed_flag, format);
        if (report->parsed()) return run_report(results_path, out, format);
    } catch (const fn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
