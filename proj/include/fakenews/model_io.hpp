#pragma once

// Versioned, self-describing text format for trained model artifacts.
//
//   fakenews-model <version>
//   kind <logreg|svm|forest|mlp-baseline|mlp-regularized>
//   config-begin / key value lines / config-end      training-config snapshot
//   tfidf block (terms, document frequencies, idf weights, flags)
//   model parameter block
//   checksum <8-hex CRC32>
//
// Reals are written with 17 significant digits, which round-trips IEEE
// doubles exactly; loading therefore reproduces predictions bit for bit.
// The CRC32 (IEEE reflected polynomial) covers every payload byte between
// the header line and the checksum line. load_model verifies the version,
// then the checksum, before parsing anything else.

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fakenews/error.hpp"
#include "fakenews/forest.hpp"
#include "fakenews/linear.hpp"
#include "fakenews/neural.hpp"
#include "fakenews/sparse.hpp"
#include "fakenews/tfidf.hpp"

namespace fakenews {

inline constexpr int kModelFormatVersion = 1;
inline constexpr const char* kModelMagic = "fakenews-model";

enum class ModelKind { logreg, svm, forest, mlp_baseline, mlp_regularized };

inline const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::logreg: return "logreg";
        case ModelKind::svm: return "svm";
        case ModelKind::forest: return "forest";
        case ModelKind::mlp_baseline: return "mlp-baseline";
        case ModelKind::mlp_regularized: return "mlp-regularized";
    }
    return "?";
}

inline ModelKind parse_model_kind(const std::string& name) {
    if (name == "logreg") return ModelKind::logreg;
    if (name == "svm") return ModelKind::svm;
    if (name == "forest") return ModelKind::forest;
    if (name == "mlp-baseline") return ModelKind::mlp_baseline;
    if (name == "mlp-regularized") return ModelKind::mlp_regularized;
    raise(ErrorKind::UnknownModelKind, "unknown model kind \"" + name + "\"");
}

struct ModelArtifact {
    ModelKind kind = ModelKind::logreg;
    TfidfModel tfidf;
    std::variant<LinearModel, ForestModel, MlpModel> model;
    std::vector<std::pair<std::string, std::string>> config;  // training snapshot
};

inline std::uint32_t crc32(const std::string& data) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t crc = 0xFFFFFFFFu;
    for (unsigned char byte : data) crc = table[(crc ^ byte) & 0xFFu] ^ (crc >> 8);
    return crc ^ 0xFFFFFFFFu;
}

namespace io_detail {

inline std::string fmt_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

inline void write_reals(std::ostream& out, const std::vector<double>& values,
                        const char* tag) {
    out << tag << ' ' << values.size();
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << (i % 16 == 0 ? '\n' : ' ');
        out << fmt_real(values[i]);
    }
    out << '\n';
}

class TokenReader {
public:
    explicit TokenReader(const std::string& text) : in_(text) {}

    std::string word() {
        std::string tok;
        if (!(in_ >> tok)) raise(ErrorKind::IoError, "artifact truncated: expected a token");
        return tok;
    }

    void expect(const char* literal) {
        const std::string tok = word();
        if (tok != literal)
            raise(ErrorKind::IoError,
                  std::string("artifact parse error: expected \"") + literal +
                      "\", got \"" + tok + "\"");
    }

    std::size_t count() { return static_cast<std::size_t>(u64()); }
    double real() { return std::strtod(word().c_str(), nullptr); }

    std::uint64_t u64() {
        const std::string tok = word();
        try {
            return std::stoull(tok);
        } catch (const std::exception&) {
            raise(ErrorKind::IoError, "artifact parse error: expected a number, got \"" + tok + "\"");
        }
    }

    std::vector<double> reals(const char* tag) {
        expect(tag);
        std::vector<double> values(count());
        for (double& v : values) v = real();
        return values;
    }

private:
    std::istringstream in_;
};

inline void write_tree(std::ostream& out, const TreeNode& node) {
    if (node.is_leaf()) {
        out << "L " << node.class_counts[0] << ' ' << node.class_counts[1] << '\n';
        return;
    }
    out << "I " << node.feature << ' ' << fmt_real(node.threshold) << '\n';
    write_tree(out, *node.left);
    write_tree(out, *node.right);
}

inline std::unique_ptr<TreeNode> read_tree(TokenReader& reader) {
    auto node = std::make_unique<TreeNode>();
    const std::string tag = reader.word();
    if (tag == "L") {
        node->class_counts[0] = reader.count();
        node->class_counts[1] = reader.count();
        return node;
    }
    if (tag != "I")
        raise(ErrorKind::IoError, "artifact parse error: bad tree node tag \"" + tag + "\"");
    node->feature = reader.count();
    node->threshold = reader.real();
    node->left = read_tree(reader);
    node->right = read_tree(reader);
    return node;
}

}  // namespace io_detail

inline void save_model(const ModelArtifact& artifact, const std::string& path) {
    using io_detail::fmt_real;
    std::ostringstream payload;

    payload << "kind " << to_string(artifact.kind) << '\n';
    payload << "config-begin\n";
    for (const auto& [key, value] : artifact.config) payload << key << ' ' << value << '\n';
    payload << "config-end\n";

    const TfidfModel& tfidf = artifact.tfidf;
    payload << "tfidf " << tfidf.dim() << ' ' << tfidf.vocabulary.n_docs << ' '
            << (tfidf.normalize ? 1 : 0) << ' ' << tfidf.min_df << '\n';
    for (std::size_t i = 0; i < tfidf.dim(); ++i)
        payload << "term " << tfidf.vocabulary.terms[i] << ' '
                << tfidf.vocabulary.document_frequency[i] << ' ' << fmt_real(tfidf.idf[i])
                << '\n';

    if (const auto* linear = std::get_if<LinearModel>(&artifact.model)) {
        payload << "linear " << (linear->loss_kind == LossKind::log ? "log" : "hinge")
                << ' ' << fmt_real(linear->lambda) << ' ' << fmt_real(linear->bias)
                << '\n';
        io_detail::write_reals(payload, linear->weights, "weights");
    } else if (const auto* forest = std::get_if<ForestModel>(&artifact.model)) {
        payload << "forest " << forest->trees.size() << ' ' << forest->dim << ' '
                << forest->hyper.max_depth << ' ' << forest->hyper.n_features_per_split
                << ' ' << forest->hyper.max_thresholds << ' '
                << (forest->hyper.bootstrap ? 1 : 0) << ' ' << forest->seed << '\n';
        for (const auto& tree : forest->trees) io_detail::write_tree(payload, *tree);
    } else {
        const auto& mlp = std::get<MlpModel>(artifact.model);
        payload << "mlp " << mlp.layer_dims.size();
        for (std::size_t d : mlp.layer_dims) payload << ' ' << d;
        payload << ' ' << fmt_real(mlp.dropout_rate) << ' ' << fmt_real(mlp.lambda) << '\n';
        for (std::size_t l = 0; l < mlp.n_affine(); ++l) {
            io_detail::write_reals(payload, mlp.weights[l], "weights");
            io_detail::write_reals(payload, mlp.biases[l], "biases");
        }
    }

    const std::string body = payload.str();
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorKind::IoError, "cannot write model file: " + path);
    char checksum[16];
    std::snprintf(checksum, sizeof(checksum), "%08x", crc32(body));
    out << kModelMagic << ' ' << kModelFormatVersion << '\n'
        << body << "checksum " << checksum << '\n';
    if (!out) raise(ErrorKind::IoError, "failed writing model file: " + path);
}

inline ModelArtifact load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::FileNotFound, "cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    const auto header_end = text.find('\n');
    if (header_end == std::string::npos)
        raise(ErrorKind::IoError, path + ": not a model file");
    {
        std::istringstream header(text.substr(0, header_end));
        std::string magic;
        int version = -1;
        header >> magic >> version;
        if (magic != kModelMagic)
            raise(ErrorKind::IoError, path + ": not a model file (bad magic)");
        if (version != kModelFormatVersion)
            raise(ErrorKind::UnsupportedVersion,
                  path + ": unsupported model format version " + std::to_string(version));
    }

    const auto checksum_at = text.rfind("checksum ");
    if (checksum_at == std::string::npos || checksum_at <= header_end)
        raise(ErrorKind::IoError, path + ": missing checksum line");
    const std::string body = text.substr(header_end + 1, checksum_at - header_end - 1);
    {
        std::istringstream line(text.substr(checksum_at));
        std::string word, hex;
        line >> word >> hex;
        char expected[16];
        std::snprintf(expected, sizeof(expected), "%08x", crc32(body));
        if (hex != expected)
            raise(ErrorKind::ChecksumMismatch,
                  path + ": checksum mismatch (file corrupt): stored " + hex +
                      ", computed " + expected);
    }

    io_detail::TokenReader reader(body);
    ModelArtifact artifact;
    reader.expect("kind");
    artifact.kind = parse_model_kind(reader.word());

    reader.expect("config-begin");
    for (;;) {
        const std::string key = reader.word();
        if (key == "config-end") break;
        artifact.config.emplace_back(key, reader.word());
    }

    reader.expect("tfidf");
    const std::size_t n_terms = reader.count();
    artifact.tfidf.vocabulary.n_docs = reader.count();
    artifact.tfidf.normalize = reader.count() != 0;
    artifact.tfidf.min_df = reader.count();
    artifact.tfidf.vocabulary.terms.reserve(n_terms);
    artifact.tfidf.vocabulary.document_frequency.reserve(n_terms);
    artifact.tfidf.idf.reserve(n_terms);
    for (std::size_t i = 0; i < n_terms; ++i) {
        reader.expect("term");
        artifact.tfidf.vocabulary.terms.push_back(reader.word());
        artifact.tfidf.vocabulary.index[artifact.tfidf.vocabulary.terms.back()] = i;
        artifact.tfidf.vocabulary.document_frequency.push_back(reader.count());
        artifact.tfidf.idf.push_back(reader.real());
    }

    const std::string block = reader.word();
    if (block == "linear") {
        LinearModel model;
        model.loss_kind = reader.word() == "log" ? LossKind::log : LossKind::hinge;
        model.lambda = reader.real();
        model.bias = reader.real();
        model.weights = reader.reals("weights");
        artifact.model = std::move(model);
    } else if (block == "forest") {
        ForestModel model;
        const std::size_t n_trees = reader.count();
        model.hyper.n_trees = n_trees;
        model.dim = reader.count();
        model.hyper.max_depth = reader.count();
        model.hyper.n_features_per_split = reader.count();
        model.hyper.max_thresholds = reader.count();
        model.hyper.bootstrap = reader.count() != 0;
        model.seed = reader.u64();
        model.trees.reserve(n_trees);
        for (std::size_t t = 0; t < n_trees; ++t)
            model.trees.push_back(io_detail::read_tree(reader));
        artifact.model = std::move(model);
    } else if (block == "mlp") {
        MlpModel model;
        const std::size_t n_dims = reader.count();
        model.layer_dims.resize(n_dims);
        for (std::size_t& d : model.layer_dims) d = reader.count();
        model.dropout_rate = reader.real();
        model.lambda = reader.real();
        for (std::size_t l = 0; l + 1 < n_dims; ++l) {
            model.weights.push_back(reader.reals("weights"));
            model.biases.push_back(reader.reals("biases"));
        }
        artifact.model = std::move(model);
    } else {
        raise(ErrorKind::IoError, path + ": unknown parameter block \"" + block + "\"");
    }
    return artifact;
}

struct ScoredPrediction {
    int label = 1;
    double score = 0.5;  // probability for log/mlp models, decision for svm
};

// Vectorizes a document with the artifact's embedded TF-IDF model and runs
// the right predictor.
inline ScoredPrediction artifact_predict(const ModelArtifact& artifact,
                                         const Document& doc) {
    const SparseVector x = transform(artifact.tfidf, doc);
    ScoredPrediction out;
    if (const auto* linear = std::get_if<LinearModel>(&artifact.model)) {
        out.label = predict(*linear, x);
        out.score = linear->loss_kind == LossKind::log ? predict_proba(*linear, x)
                                                       : decision(*linear, x);
    } else if (const auto* forest = std::get_if<ForestModel>(&artifact.model)) {
        const ForestVote vote = predict_forest(*forest, x);
        out.label = vote.label;
        out.score = vote.vote_fraction;
    } else {
        const MlpPrediction pred = predict_mlp(std::get<MlpModel>(artifact.model), x);
        out.label = pred.label;
        out.score = pred.probability;
    }
    return out;
}

}  // namespace fakenews
