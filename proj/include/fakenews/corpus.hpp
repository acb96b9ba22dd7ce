#pragma once

// Labeled news corpus: CSV ingestion, missing-value cleanup, binary label
// encoding (1 = real, 0 = fake) and the deterministic train/test split.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fakenews/csv.hpp"
#include "fakenews/error.hpp"
#include "fakenews/prng.hpp"

namespace fakenews {

inline std::string trim(const std::string& s) {
    const char* ws = " \t\r\n\f\v";
    const auto begin = s.find_first_not_of(ws);
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(ws);
    return s.substr(begin, end - begin + 1);
}

inline std::string to_lower(std::string s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
    return s;
}

struct Document {
    std::size_t id = 0;  // row ordinal in the source file, 0-based
    std::string title;
    std::string body;
    std::string raw_label;          // as read from the CSV; kept for encode_labels
    std::optional<int> label;       // 0 = fake, 1 = real

    std::string text() const { return title.empty() ? body : title + " " + body; }
};

struct Corpus {
    std::vector<Document> documents;
    std::string source;
    bool labeled = false;  // the ingestion schema had a label column

    std::size_t size() const { return documents.size(); }
    bool empty() const { return documents.empty(); }
    const Document& operator[](std::size_t i) const { return documents[i]; }
};

struct ColumnMapping {
    std::string title_column = "title";  // empty -> no title column
    std::string text_column = "text";
    std::string label_column = "label";  // empty -> unlabeled (classify-only) input
};

struct SplitSpec {
    double test_fraction = 0.2;
    std::uint64_t seed = 42;
};

using LabelMapping = std::map<std::string, int>;

// Case-insensitive defaults; unmapped values error loudly in encode_labels.
inline LabelMapping default_label_mapping() {
    return {{"real", 1}, {"fake", 0}, {"1", 1}, {"0", 0}};
}

inline Corpus load_csv(const std::string& path, const ColumnMapping& schema) {
    const auto records = read_csv(path);
    CsvRecord header = records.front();
    if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0)
        header[0] = header[0].substr(3);  // strip UTF-8 BOM

    auto find_column = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (trim(header[i]) == name) return i;
        raise(ErrorKind::MissingColumn,
              path + ": header has no column named \"" + name + "\"");
    };

    const std::size_t text_at = find_column(schema.text_column);
    const bool has_title = !schema.title_column.empty();
    const bool has_label = !schema.label_column.empty();
    const std::size_t title_at = has_title ? find_column(schema.title_column) : 0;
    const std::size_t label_at = has_label ? find_column(schema.label_column) : 0;

    Corpus corpus;
    corpus.source = path;
    corpus.labeled = has_label;
    corpus.documents.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        Document doc;
        doc.id = r - 1;
        if (has_title) doc.title = records[r][title_at];
        doc.body = records[r][text_at];
        if (has_label) doc.raw_label = records[r][label_at];
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

// A document is missing when its body is empty after trimming, or — for a
// labeled corpus — its raw label is. Empty titles are tolerated (title is
// concatenated with the body downstream). Idempotent; order preserved.
inline Corpus drop_missing(const Corpus& corpus) {
    Corpus out;
    out.source = corpus.source;
    out.labeled = corpus.labeled;
    for (const Document& doc : corpus.documents) {
        if (trim(doc.body).empty()) continue;
        if (corpus.labeled && trim(doc.raw_label).empty()) continue;
        out.documents.push_back(doc);
    }
    return out;
}

inline Corpus encode_labels(const Corpus& corpus, const LabelMapping& mapping) {
    LabelMapping folded;
    for (const auto& [key, value] : mapping) folded[to_lower(trim(key))] = value;

    Corpus out = corpus;
    out.labeled = true;
    for (Document& doc : out.documents) {
        const auto it = folded.find(to_lower(trim(doc.raw_label)));
        if (it == folded.end()) {
            std::ostringstream msg;
            msg << corpus.source << ": unknown label \"" << doc.raw_label
                << "\" at dataset row " << (doc.id + 2);
            raise(ErrorKind::UnknownLabel, msg.str());
        }
        doc.label = it->second;
    }
    return out;
}

inline void require_labeled(const Corpus& corpus) {
    for (const Document& doc : corpus.documents)
        if (!doc.label.has_value())
            raise(ErrorKind::UnlabeledDocument,
                  "document id " + std::to_string(doc.id) + " has no encoded label");
}

struct CorpusSplit {
    Corpus train;
    Corpus test;
};

// Deterministic split: Fisher-Yates over document positions, driven by
// xoshiro256** seeded with spec.seed (see prng.hpp). The first
// round(test_fraction * n) shuffled positions form the test set; both
// subsets keep the original corpus order. Plain random, not stratified.
inline CorpusSplit split(const Corpus& corpus, const SplitSpec& spec) {
    if (corpus.empty()) raise(ErrorKind::EmptyCorpus, "cannot split an empty corpus");
    if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0))
        raise(ErrorKind::UsageError, "test_fraction must lie in (0, 1)");
    require_labeled(corpus);

    const std::size_t n = corpus.size();
    const auto n_test = static_cast<std::size_t>(
        std::llround(spec.test_fraction * static_cast<double>(n)));

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(spec.seed);
    fisher_yates_shuffle(order, rng);

    std::vector<bool> in_test(n, false);
    for (std::size_t i = 0; i < n_test; ++i) in_test[order[i]] = true;

    CorpusSplit out;
    out.train.source = out.test.source = corpus.source;
    out.train.labeled = out.test.labeled = corpus.labeled;
    for (std::size_t i = 0; i < n; ++i)
        (in_test[i] ? out.test : out.train).documents.push_back(corpus.documents[i]);
    return out;
}

struct LabelCounts {
    std::size_t real = 0;
    std::size_t fake = 0;
    std::size_t total() const { return real + fake; }
};

inline LabelCounts label_distribution(const Corpus& corpus) {
    require_labeled(corpus);
    LabelCounts counts;
    for (const Document& doc : corpus.documents)
        (*doc.label == 1 ? counts.real : counts.fake) += 1;
    return counts;
}

}  // namespace fakenews
