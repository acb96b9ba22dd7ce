#pragma once

// Shared test fixtures: temp dirs, synthetic corpora, and the independent
// brute-force oracles the suites check the implementations against. The
// oracles deliberately avoid the library's code paths (nested loops, dense
// matrices) except for primitive formula expressions.

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fakenews/corpus.hpp"
#include "fakenews/csv.hpp"
#include "fakenews/prng.hpp"
#include "fakenews/sparse.hpp"

namespace testutil {

class TempDir {
public:
    TempDir() {
        char pattern[] = "/tmp/fakenews-test-XXXXXX";
        const char* made = ::mkdtemp(pattern);
        if (!made) throw std::runtime_error("mkdtemp failed");
        path_ = made;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return path_ + "/" + name; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline fakenews::Document doc(std::size_t id, std::string body, int label = -1,
                              std::string title = "") {
    fakenews::Document d;
    d.id = id;
    d.title = std::move(title);
    d.body = std::move(body);
    if (label >= 0) {
        d.label = label;
        d.raw_label = std::to_string(label);
    }
    return d;
}

inline fakenews::Corpus corpus_of(const std::vector<std::pair<std::string, int>>& rows) {
    fakenews::Corpus corpus;
    corpus.source = "<memory>";
    corpus.labeled = true;
    for (std::size_t i = 0; i < rows.size(); ++i)
        corpus.documents.push_back(doc(i, rows[i].first, rows[i].second));
    return corpus;
}

// --- synthetic news -------------------------------------------------------

// Class-tilted token pools: learnable by every model family, labels known by
// construction. Returns a labeled corpus; see synthetic_csv for the file
// version.
inline fakenews::Corpus synthetic_corpus(std::size_t n, double real_fraction,
                                         std::uint64_t seed) {
    fakenews::Rng rng(seed);
    fakenews::Corpus corpus;
    corpus.source = "<synthetic>";
    corpus.labeled = true;

    auto filler = [&] { return "filler" + std::to_string(rng.next_below(120)); };
    auto signal = [&](int label) {
        return (label == 1 ? "credible" : "shocking") + std::to_string(rng.next_below(12));
    };

    const auto n_real = static_cast<std::size_t>(real_fraction * static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const int label = i < n_real ? 1 : 0;
        std::string title;
        for (int t = 0; t < 4; ++t) title += (t ? " " : "") + filler();
        std::string body;
        const std::size_t words = 30 + rng.next_below(30);
        for (std::size_t w = 0; w < words; ++w) {
            if (!body.empty()) body += ' ';
            const std::uint64_t roll = rng.next_below(20);
            if (roll < 14)
                body += filler();
            else if (roll < 19)
                body += signal(label);
            else
                body += signal(1 - label);  // noise from the other class
        }
        fakenews::Document d;
        d.id = i;
        d.title = std::move(title);
        d.body = std::move(body);
        d.label = label;
        d.raw_label = label == 1 ? "REAL" : "FAKE";
        corpus.documents.push_back(std::move(d));
    }
    return corpus;
}

inline void synthetic_csv(const std::string& path, std::size_t n, double real_fraction,
                          std::uint64_t seed) {
    const fakenews::Corpus corpus = synthetic_corpus(n, real_fraction, seed);
    std::vector<fakenews::CsvRecord> records;
    records.push_back({"title", "text", "label"});
    for (const auto& d : corpus.documents)
        records.push_back({d.title, d.body, d.raw_label});
    std::ofstream out(path, std::ios::binary);
    fakenews::write_csv(out, records);
}

// --- TF-IDF brute-force oracle --------------------------------------------

// Dense nested-loop recomputation of fit+transform using the same formula
// expressions (tf * idf, ascending-index norm) but none of the library's
// machinery.
struct DenseTfidfOracle {
    std::vector<std::string> terms;  // sorted
    std::vector<double> idf;

    // Independent tokenizer: regex word scan instead of the library's char loop.
    static std::vector<std::string> toks(const std::string& text) {
        static const std::regex word("[0-9A-Za-z]+");
        std::vector<std::string> out;
        for (auto it = std::sregex_iterator(text.begin(), text.end(), word);
             it != std::sregex_iterator(); ++it) {
            std::string w = it->str();
            if (w.size() < 2) continue;
            for (char& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            out.push_back(w);
        }
        return out;
    }

    void fit(const fakenews::Corpus& train, std::size_t min_df) {
        std::map<std::string, std::size_t> df;
        for (const auto& d : train.documents) {
            std::set<std::string> uniq;
            for (const auto& t : toks(d.text())) uniq.insert(t);
            for (const auto& t : uniq) df[t] += 1;
        }
        terms.clear();
        idf.clear();
        for (const auto& [term, count] : df)
            if (count >= min_df) terms.push_back(term);  // std::map is already sorted
        const double n = static_cast<double>(train.documents.size());
        for (const auto& term : terms)
            idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(df[term]))) + 1.0);
    }

    std::vector<double> transform_dense(const fakenews::Document& d, bool normalize) const {
        std::vector<double> dense(terms.size(), 0.0);
        for (const auto& tok : toks(d.text()))
            for (std::size_t i = 0; i < terms.size(); ++i)
                if (terms[i] == tok) dense[i] += 1.0;
        for (std::size_t i = 0; i < terms.size(); ++i)
            dense[i] = dense[i] * idf[i];
        if (normalize) {
            double sum = 0.0;
            for (std::size_t i = 0; i < dense.size(); ++i) sum += dense[i] * dense[i];
            if (sum > 0.0) {
                const double norm = std::sqrt(sum);
                for (double& v : dense) v /= norm;
            }
        }
        return dense;
    }
};

// --- forest split oracle ----------------------------------------------------

// Exhaustive search over every (feature, midpoint-of-consecutive-distinct-
// values) candidate on dense columns: features ascending, thresholds
// ascending, strict improvement — the pinned tie-break, found by brute force.
struct OracleSplit {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double impurity = 1e18;
};

inline OracleSplit brute_force_root_split(const std::vector<fakenews::SparseVector>& X,
                                          const std::vector<int>& y) {
    const std::size_t dim = X.front().dim;
    const std::size_t n = X.size();
    OracleSplit best;
    for (std::size_t f = 0; f < dim; ++f) {
        std::set<double> distinct;
        for (const auto& x : X) distinct.insert(x.at(f));
        std::vector<double> values(distinct.begin(), distinct.end());
        for (std::size_t i = 0; i + 1 < values.size(); ++i) {
            const double threshold = (values[i] + values[i + 1]) / 2.0;
            std::size_t l0 = 0, l1 = 0, r0 = 0, r1 = 0;
            for (std::size_t s = 0; s < n; ++s) {
                const bool left = X[s].at(f) <= threshold;
                if (y[s] == 1)
                    (left ? l1 : r1) += 1;
                else
                    (left ? l0 : r0) += 1;
            }
            const double nl = static_cast<double>(l0 + l1);
            const double nr = static_cast<double>(r0 + r1);
            double wimp = 0.0;
            if (nl > 0) {
                const double p0 = static_cast<double>(l0) / nl;
                const double p1 = static_cast<double>(l1) / nl;
                wimp += nl * (1.0 - p0 * p0 - p1 * p1);
            }
            if (nr > 0) {
                const double p0 = static_cast<double>(r0) / nr;
                const double p1 = static_cast<double>(r1) / nr;
                wimp += nr * (1.0 - p0 * p0 - p1 * p1);
            }
            wimp /= nl + nr;
            if (!best.found || wimp < best.impurity) {
                best.found = true;
                best.feature = f;
                best.threshold = threshold;
                best.impurity = wimp;
            }
        }
    }
    return best;
}

// --- misc -----------------------------------------------------------------

inline fakenews::SparseVector sparse(std::size_t dim,
                                     std::initializer_list<std::pair<std::size_t, double>> entries) {
    fakenews::SparseVector x;
    x.dim = dim;
    for (const auto& [i, v] : entries) x.entries.push_back({i, v});
    return x;
}

inline std::vector<double> densify(const fakenews::SparseVector& x) {
    std::vector<double> dense(x.dim, 0.0);
    for (const auto& e : x.entries) dense[e.index] = e.value;
    return dense;
}

// Random small sparse instances for gradient checks and forest oracles.
inline std::vector<fakenews::SparseVector> random_instances(std::size_t n, std::size_t dim,
                                                            fakenews::Rng& rng,
                                                            double density = 0.8) {
    std::vector<fakenews::SparseVector> X;
    for (std::size_t i = 0; i < n; ++i) {
        fakenews::SparseVector x;
        x.dim = dim;
        for (std::size_t f = 0; f < dim; ++f)
            if (rng.next_double() < density) {
                const double v = rng.next_double(-2.0, 2.0);
                if (v != 0.0) x.entries.push_back({f, v});
            }
        X.push_back(std::move(x));
    }
    return X;
}

inline std::vector<int> random_labels(std::size_t n, fakenews::Rng& rng) {
    std::vector<int> y(n);
    bool saw0 = false, saw1 = false;
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = rng.next_below(2) == 1 ? 1 : 0;
        (y[i] ? saw1 : saw0) = true;
    }
    if (!saw0) y[0] = 0;
    if (!saw1) y[n - 1] = 1;
    return y;
}

}  // namespace testutil
