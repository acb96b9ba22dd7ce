#pragma once

// Benchmark run configuration: a sectioned key/value text file (INI style,
// full-line # or ; comments). Unknown sections or keys are errors — a typo
// in a config should fail loudly, not silently fall back to a default.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fakenews/corpus.hpp"
#include "fakenews/error.hpp"
#include "fakenews/forest.hpp"
#include "fakenews/linear.hpp"
#include "fakenews/model_io.hpp"
#include "fakenews/neural.hpp"
#include "fakenews/tfidf.hpp"

namespace fakenews {

class IniFile {
public:
    static IniFile parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) raise(ErrorKind::FileNotFound, "cannot open config file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse(buf.str(), path);
    }

    static IniFile parse(const std::string& text, const std::string& origin = "<config>") {
        IniFile ini;
        ini.origin_ = origin;
        std::istringstream in(text);
        std::string line;
        std::string section;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const std::string stripped = trim(line);
            if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') continue;
            if (stripped.front() == '[') {
                if (stripped.back() != ']')
                    raise(ErrorKind::ConfigError, origin + ": bad section header at line " +
                                                      std::to_string(line_no));
                section = trim(stripped.substr(1, stripped.size() - 2));
                continue;
            }
            const auto eq = stripped.find('=');
            if (eq == std::string::npos)
                raise(ErrorKind::ConfigError, origin + ": expected key = value at line " +
                                                  std::to_string(line_no));
            ini.entries_.push_back({section, trim(stripped.substr(0, eq)),
                                    trim(stripped.substr(eq + 1)), false});
        }
        return ini;
    }

    bool has(const std::string& section, const std::string& key) const {
        for (const auto& e : entries_)
            if (e.section == section && e.key == key) return true;
        return false;
    }

    std::string value(const std::string& section, const std::string& key,
                      const std::string& fallback) {
        for (auto& e : entries_) {
            if (e.section == section && e.key == key) {
                e.used = true;
                return e.value;
            }
        }
        return fallback;
    }

    double real(const std::string& section, const std::string& key, double fallback) {
        const std::string v = value(section, key, "");
        if (v.empty() && !has(section, key)) return fallback;
        char* end = nullptr;
        const double parsed = std::strtod(v.c_str(), &end);
        if (end == v.c_str() || *end != '\0')
            raise(ErrorKind::ConfigError,
                  origin_ + ": [" + section + "] " + key + " = \"" + v + "\" is not a number");
        return parsed;
    }

    std::uint64_t integer(const std::string& section, const std::string& key,
                          std::uint64_t fallback) {
        const std::string v = value(section, key, "");
        if (v.empty() && !has(section, key)) return fallback;
        try {
            std::size_t used = 0;
            const std::uint64_t parsed = std::stoull(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return parsed;
        } catch (const std::exception&) {
            raise(ErrorKind::ConfigError, origin_ + ": [" + section + "] " + key + " = \"" +
                                              v + "\" is not an integer");
        }
    }

    bool flag(const std::string& section, const std::string& key, bool fallback) {
        const std::string v = to_lower(value(section, key, ""));
        if (v.empty() && !has(section, key)) return fallback;
        if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
        if (v == "false" || v == "no" || v == "0" || v == "off") return false;
        raise(ErrorKind::ConfigError,
              origin_ + ": [" + section + "] " + key + " = \"" + v + "\" is not a boolean");
    }

    std::vector<std::string> list(const std::string& section, const std::string& key,
                                  const std::string& fallback) {
        std::vector<std::string> items;
        std::string joined = value(section, key, fallback);
        std::istringstream in(joined);
        std::string item;
        while (std::getline(in, item, ',')) {
            item = trim(item);
            if (!item.empty()) items.push_back(item);
        }
        return items;
    }

    // Raise on any key that was never consumed.
    void reject_unused() const {
        for (const auto& e : entries_)
            if (!e.used)
                raise(ErrorKind::ConfigError, origin_ + ": unknown key \"" + e.key +
                                                  "\" in section [" + e.section + "]");
    }

private:
    struct Entry {
        std::string section, key, value;
        bool used;
    };
    std::vector<Entry> entries_;
    std::string origin_;
};

struct RunConfig {
    std::string dataset_path = "data/news.csv";
    ColumnMapping columns;
    LabelMapping labels = default_label_mapping();
    SplitSpec split;                     // 0.2 / seed 42
    std::size_t min_df = 2;
    bool normalize = true;
    std::uint64_t seed = 42;             // global; feeds every model block
    std::vector<ModelKind> enabled = {ModelKind::logreg, ModelKind::svm,
                                      ModelKind::forest, ModelKind::mlp_baseline,
                                      ModelKind::mlp_regularized};
    std::string output_dir = "out";
    std::size_t sample = 0;              // 0 = full training split

    TrainHyper logreg;
    TrainHyper svm;
    ForestHyper forest;
    std::uint64_t forest_seed = 42;
    MlpHyper mlp_baseline = mlp_baseline_preset();
    MlpHyper mlp_regularized = mlp_regularized_preset();
};

inline RunConfig default_run_config() { return RunConfig{}; }

namespace config_detail {

inline void read_linear_block(IniFile& ini, const std::string& section, TrainHyper& hyper) {
    hyper.learning_rate = ini.real(section, "learning_rate", hyper.learning_rate);
    hyper.epochs = ini.integer(section, "epochs", hyper.epochs);
    hyper.lambda = ini.real(section, "lambda", hyper.lambda);
    hyper.seed = ini.integer(section, "seed", hyper.seed);
}

inline void read_mlp_block(IniFile& ini, const std::string& section, MlpHyper& hyper) {
    const auto hidden = ini.list(section, "hidden", "");
    if (!hidden.empty()) {
        hyper.hidden_dims.clear();
        for (const std::string& h : hidden)
            hyper.hidden_dims.push_back(static_cast<std::size_t>(std::stoull(h)));
    }
    hyper.learning_rate = ini.real(section, "learning_rate", hyper.learning_rate);
    hyper.epochs = ini.integer(section, "epochs", hyper.epochs);
    hyper.batch_size = ini.integer(section, "batch_size", hyper.batch_size);
    hyper.dropout_rate = ini.real(section, "dropout", hyper.dropout_rate);
    hyper.lambda = ini.real(section, "lambda", hyper.lambda);
    hyper.seed = ini.integer(section, "seed", hyper.seed);
}

}  // namespace config_detail

inline RunConfig run_config_from_ini(IniFile ini) {
    RunConfig config;

    config.dataset_path = ini.value("data", "path", config.dataset_path);
    config.columns.title_column = ini.value("data", "title_column", config.columns.title_column);
    config.columns.text_column = ini.value("data", "text_column", config.columns.text_column);
    config.columns.label_column = ini.value("data", "label_column", config.columns.label_column);
    const auto real_tokens = ini.list("data", "real_labels", "real, 1");
    const auto fake_tokens = ini.list("data", "fake_labels", "fake, 0");
    config.labels.clear();
    for (const std::string& tok : real_tokens) config.labels[tok] = 1;
    for (const std::string& tok : fake_tokens) config.labels[tok] = 0;

    config.split.test_fraction = ini.real("split", "test_fraction", config.split.test_fraction);
    config.split.seed = ini.integer("split", "seed", config.split.seed);

    config.min_df = ini.integer("vectorizer", "min_df", config.min_df);
    config.normalize = ini.flag("vectorizer", "normalize", config.normalize);

    config.seed = ini.integer("run", "seed", config.seed);
    config.output_dir = ini.value("run", "output_dir", config.output_dir);
    const auto models = ini.list("run", "models",
                                 "logreg, svm, forest, mlp-baseline, mlp-regularized");
    config.enabled.clear();
    for (const std::string& name : models) config.enabled.push_back(parse_model_kind(name));
    if (config.enabled.empty())
        raise(ErrorKind::ConfigError, "no models enabled in [run] models");

    // Per-model seeds default to the global seed; blocks may override.
    config.logreg.seed = config.svm.seed = config.seed;
    config.forest_seed = config.seed;
    config.mlp_baseline.seed = config.mlp_regularized.seed = config.seed;

    config_detail::read_linear_block(ini, "logreg", config.logreg);
    config_detail::read_linear_block(ini, "svm", config.svm);

    config.forest.n_trees = ini.integer("forest", "n_trees", config.forest.n_trees);
    config.forest.max_depth = ini.integer("forest", "max_depth", config.forest.max_depth);
    config.forest.n_features_per_split =
        ini.integer("forest", "features_per_split", config.forest.n_features_per_split);
    config.forest.max_thresholds =
        ini.integer("forest", "max_thresholds", config.forest.max_thresholds);
    config.forest_seed = ini.integer("forest", "seed", config.forest_seed);

    config_detail::read_mlp_block(ini, "mlp-baseline", config.mlp_baseline);
    config_detail::read_mlp_block(ini, "mlp-regularized", config.mlp_regularized);

    ini.reject_unused();

    if (config.dataset_path.empty())
        raise(ErrorKind::ConfigError, "[data] path must not be empty");
    if (config.output_dir.empty())
        raise(ErrorKind::ConfigError, "[run] output_dir must not be empty");
    return config;
}

inline RunConfig load_run_config(const std::string& path) {
    return run_config_from_ini(IniFile::parse_file(path));
}

}  // namespace fakenews
