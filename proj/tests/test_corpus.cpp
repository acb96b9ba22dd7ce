#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "fakenews/corpus.hpp"
#include "helpers.hpp"

using namespace fakenews;
using testutil::TempDir;

namespace {

Corpus tiny_csv_corpus(const TempDir& dir, const std::string& content,
                       ColumnMapping schema = {}) {
    testutil::write_file(dir.file("data.csv"), content);
    return load_csv(dir.file("data.csv"), schema);
}

}  // namespace

TEST_CASE("load_csv keeps file order and raw labels", "[corpus]") {
    TempDir dir;
    const Corpus corpus = tiny_csv_corpus(
        dir, "title,text,label\nT0,body zero,REAL\nT1,body one,FAKE\nT2,body two,REAL\n");
    REQUIRE(corpus.size() == 3);
    CHECK(corpus.labeled);
    CHECK(corpus[0].id == 0);
    CHECK(corpus[0].title == "T0");
    CHECK(corpus[0].body == "body zero");
    CHECK(corpus[0].raw_label == "REAL");
    CHECK_FALSE(corpus[0].label.has_value());
    CHECK(corpus[2].id == 2);
    CHECK(corpus[2].raw_label == "REAL");
}

TEST_CASE("load_csv without a label column yields an unlabeled corpus", "[corpus]") {
    TempDir dir;
    ColumnMapping schema;
    schema.label_column = "";
    const Corpus corpus = tiny_csv_corpus(dir, "title,text\nT0,body zero\n", schema);
    REQUIRE(corpus.size() == 1);
    CHECK_FALSE(corpus.labeled);
}

TEST_CASE("missing configured column errors", "[corpus]") {
    TempDir dir;
    testutil::write_file(dir.file("data.csv"), "title,text\nT0,body\n");
    try {
        load_csv(dir.file("data.csv"), ColumnMapping{});
        FAIL("expected MissingColumn");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingColumn);
        CHECK(std::string(e.what()).find("label") != std::string::npos);
    }
}

TEST_CASE("drop_missing removes empty bodies and labels, keeps order", "[corpus]") {
    Corpus corpus;
    corpus.labeled = true;
    corpus.documents = {testutil::doc(0, "keep zero", 1), testutil::doc(1, "", 0),
                        testutil::doc(2, "keep two", 1), testutil::doc(3, "   ", 0),
                        testutil::doc(4, "keep four", 0)};
    for (auto& d : corpus.documents) d.raw_label = "x";
    const Corpus cleaned = drop_missing(corpus);
    REQUIRE(cleaned.size() == 3);
    CHECK(cleaned[0].id == 0);
    CHECK(cleaned[1].id == 2);
    CHECK(cleaned[2].id == 4);
    CHECK(corpus.size() == 5);  // input untouched

    Corpus blank_label;
    blank_label.labeled = true;
    blank_label.documents = {testutil::doc(0, "body a"), testutil::doc(1, "body b")};
    blank_label.documents[0].raw_label = "real";
    blank_label.documents[1].raw_label = "  ";
    CHECK(drop_missing(blank_label).size() == 1);
}

TEST_CASE("drop_missing keeps a clean corpus identical and is idempotent", "[corpus]") {
    const Corpus corpus = testutil::synthetic_corpus(60, 0.5, 17);
    const Corpus once = drop_missing(corpus);
    REQUIRE(once.size() == corpus.size());
    const Corpus twice = drop_missing(once);
    REQUIRE(twice.size() == once.size());
    for (std::size_t i = 0; i < once.size(); ++i) {
        CHECK(twice[i].id == once[i].id);
        CHECK(twice[i].body == once[i].body);
    }
}

TEST_CASE("drop_missing matches an independent scan on randomly blanked rows",
          "[corpus]") {
    Corpus corpus = testutil::synthetic_corpus(100, 0.5, 23);
    Rng rng(91);
    std::size_t expected = 0;
    for (auto& d : corpus.documents) {
        if (rng.next_below(4) == 0) d.body.clear();
        if (rng.next_below(7) == 0) d.raw_label = " ";
    }
    // independent oracle: plain scan with its own missing rule
    for (const auto& d : corpus.documents) {
        bool body_blank = true;
        for (char c : d.body)
            if (c != ' ' && c != '\t' && c != '\n') body_blank = false;
        bool label_blank = true;
        for (char c : d.raw_label)
            if (c != ' ' && c != '\t' && c != '\n') label_blank = false;
        if (!body_blank && !label_blank) ++expected;
    }
    CHECK(drop_missing(corpus).size() == expected);
}

TEST_CASE("encode_labels maps by trimmed, case-insensitive token", "[corpus]") {
    Corpus corpus;
    corpus.labeled = true;
    corpus.documents = {testutil::doc(0, "a"), testutil::doc(1, "b"), testutil::doc(2, "c")};
    corpus.documents[0].raw_label = "REAL";
    corpus.documents[1].raw_label = " fake ";
    corpus.documents[2].raw_label = "Real";
    const Corpus encoded = encode_labels(corpus, default_label_mapping());
    CHECK(*encoded[0].label == 1);
    CHECK(*encoded[1].label == 0);
    CHECK(*encoded[2].label == 1);
}

TEST_CASE("numeric labels pass through the default mapping", "[corpus]") {
    Corpus corpus;
    corpus.labeled = true;
    corpus.documents = {testutil::doc(0, "a"), testutil::doc(1, "b")};
    corpus.documents[0].raw_label = "1";
    corpus.documents[1].raw_label = "0";
    const Corpus encoded = encode_labels(corpus, default_label_mapping());
    CHECK(*encoded[0].label == 1);
    CHECK(*encoded[1].label == 0);
}

TEST_CASE("unknown label names the dataset row", "[corpus]") {
    Corpus corpus;
    corpus.source = "input.csv";
    corpus.labeled = true;
    corpus.documents = {testutil::doc(0, "a"), testutil::doc(1, "b")};
    corpus.documents[0].raw_label = "real";
    corpus.documents[1].raw_label = "unknown";
    try {
        encode_labels(corpus, default_label_mapping());
        FAIL("expected UnknownLabel");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownLabel);
        CHECK(std::string(e.what()).find("unknown") != std::string::npos);
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);  // id 1 + header
    }
}

TEST_CASE("split is deterministic and partitions by the documented sizes", "[corpus]") {
    const Corpus corpus = testutil::synthetic_corpus(10, 0.5, 3);
    const CorpusSplit first = split(corpus, SplitSpec{0.2, 42});
    CHECK(first.train.size() == 8);
    CHECK(first.test.size() == 2);

    const CorpusSplit second = split(corpus, SplitSpec{0.2, 42});
    REQUIRE(second.test.size() == first.test.size());
    for (std::size_t i = 0; i < first.test.size(); ++i)
        CHECK(first.test[i].id == second.test[i].id);

    std::set<std::size_t> ids;
    for (const auto& d : first.train.documents) ids.insert(d.id);
    for (const auto& d : first.test.documents) ids.insert(d.id);
    CHECK(ids.size() == corpus.size());  // every id in exactly one side
}

TEST_CASE("split size arithmetic rounds to nearest at scale", "[corpus]") {
    Corpus corpus;
    corpus.labeled = true;
    corpus.documents.reserve(44898);
    for (std::size_t i = 0; i < 44898; ++i)
        corpus.documents.push_back(testutil::doc(i, "tiny body", i % 2 == 0 ? 1 : 0));
    const CorpusSplit parts = split(corpus, SplitSpec{0.2, 42});
    CHECK(parts.test.size() == 8980);  // round(0.2 * 44898)
    CHECK(parts.train.size() == 44898 - 8980);
}

TEST_CASE("different seeds pick different test sets", "[corpus]") {
    const Corpus corpus = testutil::synthetic_corpus(100, 0.5, 3);
    const CorpusSplit a = split(corpus, SplitSpec{0.2, 42});
    const CorpusSplit b = split(corpus, SplitSpec{0.2, 43});
    std::set<std::size_t> ids_a, ids_b;
    for (const auto& d : a.test.documents) ids_a.insert(d.id);
    for (const auto& d : b.test.documents) ids_b.insert(d.id);
    CHECK(ids_a != ids_b);
}

TEST_CASE("split preconditions", "[corpus]") {
    Corpus empty;
    CHECK_THROWS_AS(split(empty, SplitSpec{}), Error);

    Corpus unlabeled;
    unlabeled.documents = {testutil::doc(0, "a"), testutil::doc(1, "b")};
    try {
        split(unlabeled, SplitSpec{});
        FAIL("expected UnlabeledDocument");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnlabeledDocument);
    }
}

TEST_CASE("label_distribution counts both classes", "[corpus]") {
    const Corpus four = testutil::corpus_of({{"a", 1}, {"b", 1}, {"c", 0}, {"d", 0}});
    const LabelCounts counts = label_distribution(four);
    CHECK(counts.real == 2);
    CHECK(counts.fake == 2);
    CHECK(counts.total() == four.size());

    const Corpus big = testutil::synthetic_corpus(1000, 0.7, 5);
    const LabelCounts big_counts = label_distribution(big);
    CHECK(big_counts.real == 700);  // generator is the oracle
    CHECK(big_counts.fake == 300);
}

TEST_CASE("label_distribution sums to corpus size on random corpora", "[corpus]") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Rng rng(seed);
        const auto corpus =
            testutil::synthetic_corpus(50 + rng.next_below(100), 0.3 + 0.4 * rng.next_double(), seed);
        const LabelCounts counts = label_distribution(corpus);
        CHECK(counts.total() == corpus.size());
    }
}
