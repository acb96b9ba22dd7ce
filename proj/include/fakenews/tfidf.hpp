#pragma once

// Tokenization and TF-IDF vectorization.
//
// Formula (pinned so the brute-force oracle can match it bit for bit):
//   idf[t]  = ln((1 + N) / (1 + df_t)) + 1         with N = |train corpus|
//   value   = tf * idf[t]                          tf = raw in-document count
//   L2 norm = sqrt(sum of value^2), accumulated in ascending index order;
//             each entry is then divided by it (zero vectors stay zero).
// Vocabulary indices are assigned after sorting terms lexicographically, so
// they do not depend on hash-map iteration order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fakenews/corpus.hpp"
#include "fakenews/error.hpp"
#include "fakenews/sparse.hpp"

namespace fakenews {

// Lowercased tokens split on every non-alphanumeric byte (ASCII ranges only,
// so results do not depend on locale); tokens shorter than 2 chars dropped.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.size() >= 2) tokens.push_back(current);
        current.clear();
    };
    for (char c : text) {
        if (c >= 'a' && c <= 'z') {
            current += c;
        } else if (c >= 'A' && c <= 'Z') {
            current += static_cast<char>(c + ('a' - 'A'));
        } else if (c >= '0' && c <= '9') {
            current += c;
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

struct Vocabulary {
    std::vector<std::string> terms;                     // index -> term, sorted
    std::unordered_map<std::string, std::size_t> index; // term -> index
    std::vector<std::size_t> document_frequency;        // index -> df
    std::size_t n_docs = 0;

    std::size_t size() const { return terms.size(); }
};

struct TfidfModel {
    Vocabulary vocabulary;
    std::vector<double> idf;
    bool normalize = true;
    std::size_t min_df = 2;

    std::size_t dim() const { return vocabulary.size(); }
};

// Fits vocabulary and IDF weights on the training corpus only. Terms seen in
// fewer than min_df training documents are excluded.
inline TfidfModel fit_tfidf(const Corpus& train, std::size_t min_df = 2,
                            bool normalize = true) {
    if (train.empty()) raise(ErrorKind::EmptyCorpus, "cannot fit TF-IDF on an empty corpus");

    std::unordered_map<std::string, std::size_t> df;
    for (const Document& doc : train.documents) {
        auto tokens = tokenize(doc.text());
        std::sort(tokens.begin(), tokens.end());
        tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
        for (std::string& tok : tokens) df[std::move(tok)] += 1;
    }

    TfidfModel model;
    model.normalize = normalize;
    model.min_df = min_df;
    model.vocabulary.n_docs = train.size();
    for (const auto& [term, count] : df)
        if (count >= min_df) model.vocabulary.terms.push_back(term);
    if (model.vocabulary.terms.empty())
        raise(ErrorKind::EmptyVocabulary,
              "no term appears in at least " + std::to_string(min_df) + " documents");
    std::sort(model.vocabulary.terms.begin(), model.vocabulary.terms.end());

    const double n = static_cast<double>(train.size());
    model.vocabulary.document_frequency.resize(model.vocabulary.terms.size());
    model.idf.resize(model.vocabulary.terms.size());
    for (std::size_t i = 0; i < model.vocabulary.terms.size(); ++i) {
        const std::size_t term_df = df[model.vocabulary.terms[i]];
        model.vocabulary.index[model.vocabulary.terms[i]] = i;
        model.vocabulary.document_frequency[i] = term_df;
        model.idf[i] = std::log((1.0 + n) / (1.0 + static_cast<double>(term_df))) + 1.0;
    }
    return model;
}

inline SparseVector transform(const TfidfModel& model, const Document& doc) {
    std::unordered_map<std::size_t, std::size_t> counts;
    for (const std::string& tok : tokenize(doc.text())) {
        auto it = model.vocabulary.index.find(tok);
        if (it != model.vocabulary.index.end()) counts[it->second] += 1;
    }

    SparseVector vec;
    vec.dim = model.dim();
    vec.entries.reserve(counts.size());
    for (const auto& [index, tf] : counts)
        vec.entries.push_back({index, static_cast<double>(tf) * model.idf[index]});
    std::sort(vec.entries.begin(), vec.entries.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });

    if (model.normalize) {
        double sum = 0.0;
        for (const SparseEntry& e : vec.entries) sum += e.value * e.value;
        if (sum > 0.0) {
            const double norm = std::sqrt(sum);
            for (SparseEntry& e : vec.entries) e.value /= norm;
        }
    }
    return vec;
}

inline std::vector<SparseVector> transform_corpus(const TfidfModel& model,
                                                  const Corpus& corpus) {
    std::vector<SparseVector> out;
    out.reserve(corpus.size());
    for (const Document& doc : corpus.documents) out.push_back(transform(model, doc));
    return out;
}

}  // namespace fakenews
