#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fakenews/metrics.hpp"
#include "fakenews/prng.hpp"

using namespace fakenews;

namespace {

MetricsReport named(const char* name, double acc, double prec, double rec, double f1) {
    MetricsReport r;
    r.model_name = name;
    r.accuracy = acc;
    r.precision = prec;
    r.recall = rec;
    r.f1 = f1;
    return r;
}

}  // namespace

TEST_CASE("confusion counts the four cells", "[metrics]") {
    const ConfusionMatrix perfect = confusion({1, 0, 1}, {1, 0, 1});
    CHECK(perfect.tp == 2);
    CHECK(perfect.tn == 1);
    CHECK(perfect.fp == 0);
    CHECK(perfect.fn == 0);

    const ConfusionMatrix inverted = confusion({1, 0, 1}, {0, 1, 0});
    CHECK(inverted.tp == 0);
    CHECK(inverted.tn == 0);
    CHECK(inverted.fp == 1);
    CHECK(inverted.fn == 2);

    const ConfusionMatrix hand = confusion({1, 1, 1, 1, 1, 0, 0, 0, 0, 0},
                                           {1, 1, 1, 0, 0, 1, 0, 0, 0, 0});
    CHECK(hand.tp == 3);
    CHECK(hand.fn == 2);
    CHECK(hand.fp == 1);
    CHECK(hand.tn == 4);
}

TEST_CASE("confusion validates its input", "[metrics]") {
    CHECK_THROWS_AS(confusion({1, 0}, {1}), Error);
    CHECK_THROWS_AS(confusion({}, {}), Error);
}

TEST_CASE("metrics evaluates the four formulas", "[metrics]") {
    const MetricsReport perfect = metrics(ConfusionMatrix{5, 0, 0, 5});
    CHECK(perfect.accuracy == 1.0);
    CHECK(perfect.precision == 1.0);
    CHECK(perfect.recall == 1.0);
    CHECK(perfect.f1 == 1.0);

    const MetricsReport hand = metrics(ConfusionMatrix{3, 1, 2, 4});
    CHECK(hand.accuracy == Catch::Approx(0.7).epsilon(1e-12));
    CHECK(hand.precision == Catch::Approx(0.75).epsilon(1e-12));
    CHECK(hand.recall == Catch::Approx(0.6).epsilon(1e-12));
    CHECK(hand.f1 == Catch::Approx(0.6666666666666665).epsilon(1e-12));
}

TEST_CASE("zero denominators yield zero metrics, not errors", "[metrics]") {
    const MetricsReport all_negative = metrics(ConfusionMatrix{0, 0, 2, 3});
    CHECK(all_negative.precision == 0.0);
    CHECK(all_negative.f1 == 0.0);
    const MetricsReport no_positives = metrics(ConfusionMatrix{0, 0, 0, 3});
    CHECK(no_positives.recall == 0.0);
    CHECK_THROWS_AS(metrics(ConfusionMatrix{}), Error);
}

TEST_CASE("f1 is the harmonic mean of precision and recall", "[metrics]") {
    Rng rng(6);
    for (int i = 0; i < 200; ++i) {
        const ConfusionMatrix cm{rng.next_below(40), rng.next_below(40),
                                 rng.next_below(40), rng.next_below(40)};
        if (cm.total() == 0) continue;
        const MetricsReport r = metrics(cm);
        if (r.precision + r.recall > 0.0)
            CHECK(std::abs(r.f1 - 2.0 * r.precision * r.recall /
                                     (r.precision + r.recall)) < 1e-12);
        CHECK((r.accuracy >= 0.0 && r.accuracy <= 1.0));
        CHECK((r.precision >= 0.0 && r.precision <= 1.0));
        CHECK((r.recall >= 0.0 && r.recall <= 1.0));
        CHECK((r.f1 >= 0.0 && r.f1 <= 1.0));
        // independent accuracy recomputation
        CHECK(r.accuracy ==
              static_cast<double>(cm.tp + cm.tn) /
                  static_cast<double>(cm.tp + cm.fp + cm.fn + cm.tn));
    }
}

TEST_CASE("swapping truth and prediction transposes the matrix", "[metrics]") {
    Rng rng(8);
    std::vector<int> y_true, y_pred;
    for (int i = 0; i < 60; ++i) {
        y_true.push_back(static_cast<int>(rng.next_below(2)));
        y_pred.push_back(static_cast<int>(rng.next_below(2)));
    }
    const ConfusionMatrix ab = confusion(y_true, y_pred);
    const ConfusionMatrix ba = confusion(y_pred, y_true);
    CHECK(ab.tp == ba.tp);
    CHECK(ab.tn == ba.tn);
    CHECK(ab.fp == ba.fn);
    CHECK(ab.fn == ba.fp);
    CHECK(metrics(ab).accuracy == metrics(ba).accuracy);
}

TEST_CASE("compare sorts by accuracy and flags the best per metric", "[metrics]") {
    // the five configurations of the reference comparison
    const std::vector<MetricsReport> reports = {
        named("Logistic Regression", 0.9155, 0.9332, 0.8967, 0.9146),
        named("Random Forest", 0.9029, 0.8957, 0.9139, 0.9047),
        named("SVM", 0.9329, 0.9439, 0.9218, 0.9327),
        named("Neural Networks", 0.9369, 0.9388, 0.9358, 0.9373),
        named("Neural Networks (regularised)", 0.9282, 0.9281, 0.9296, 0.9289),
    };
    const ComparisonTable table = compare(reports);
    REQUIRE(table.rows.size() == 5);
    CHECK(table.rows[0].report.model_name == "Neural Networks");
    CHECK(table.rows[1].report.model_name == "SVM");
    CHECK(table.rows[0].best_accuracy);
    CHECK(table.rows[0].best_recall);
    CHECK(table.rows[0].best_f1);
    CHECK(table.rows[1].best_precision);
    CHECK_FALSE(table.rows[1].best_accuracy);
}

TEST_CASE("compare handles single rows and accuracy ties", "[metrics]") {
    const ComparisonTable single = compare({named("Only", 0.8, 0.8, 0.8, 0.8)});
    REQUIRE(single.rows.size() == 1);
    CHECK(single.rows[0].best_accuracy);
    CHECK(single.rows[0].best_precision);
    CHECK(single.rows[0].best_recall);
    CHECK(single.rows[0].best_f1);

    const ComparisonTable tied = compare(
        {named("Zeta", 0.9, 0.8, 0.7, 0.75), named("Alpha", 0.9, 0.7, 0.8, 0.75)});
    CHECK(tied.rows[0].report.model_name == "Alpha");  // alphabetical on ties
    CHECK_THROWS_AS(compare({}), Error);
}

TEST_CASE("markdown table carries the reference column header", "[metrics]") {
    const std::string md = render_markdown(compare({named("SVM", 0.9329, 0.9439, 0.9218, 0.9327)}));
    CHECK(md.find("| Model | Accuracy | Precision | Recall | f1-score |") == 0);
    CHECK(md.find("93.29%") != std::string::npos);
    CHECK(md.find("94.39%") != std::string::npos);
}

TEST_CASE("percent renders two decimals", "[metrics]") {
    CHECK(percent(0.5) == "50.00%");
    CHECK(percent(0.9369) == "93.69%");
    CHECK(percent(1.0) == "100.00%");
}
