#pragma once

// Confusion matrix, the four evaluation measures, and the multi-model
// comparison table. Positive class = real news (label 1) throughout; this
// choice changes precision/recall but not accuracy, and is called out in the
// README. Zero-denominator metrics are defined as 0 so degenerate models
// still produce a table row.

#include <algorithm>
#include <cstddef>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "fakenews/error.hpp"

namespace fakenews {

struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    std::size_t total() const { return tp + fp + fn + tn; }
};

struct MetricsReport {
    std::string model_name;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    ConfusionMatrix confusion;
    double wall_time_seconds = 0.0;  // reported, never asserted or serialized
};

inline ConfusionMatrix confusion(const std::vector<int>& y_true,
                                 const std::vector<int>& y_pred) {
    if (y_true.size() != y_pred.size())
        raise(ErrorKind::LengthMismatch, "y_true and y_pred lengths differ");
    if (y_true.empty()) raise(ErrorKind::EmptyInput, "no (truth, prediction) pairs");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i] == 1)
            (y_pred[i] == 1 ? cm.tp : cm.fn) += 1;
        else
            (y_pred[i] == 1 ? cm.fp : cm.tn) += 1;
    }
    return cm;
}

inline MetricsReport metrics(const ConfusionMatrix& cm, std::string model_name = "") {
    if (cm.total() == 0) raise(ErrorKind::EmptyMatrix, "confusion matrix is empty");
    MetricsReport report;
    report.model_name = std::move(model_name);
    report.confusion = cm;
    const auto tp = static_cast<double>(cm.tp);
    report.accuracy = (tp + static_cast<double>(cm.tn)) / static_cast<double>(cm.total());
    report.precision = cm.tp + cm.fp > 0 ? tp / static_cast<double>(cm.tp + cm.fp) : 0.0;
    report.recall = cm.tp + cm.fn > 0 ? tp / static_cast<double>(cm.tp + cm.fn) : 0.0;
    report.f1 = report.precision + report.recall > 0.0
                    ? 2.0 * report.precision * report.recall /
                          (report.precision + report.recall)
                    : 0.0;
    return report;
}

struct ComparisonRow {
    MetricsReport report;
    bool best_accuracy = false;
    bool best_precision = false;
    bool best_recall = false;
    bool best_f1 = false;
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;  // accuracy descending, ties by name
};

inline ComparisonTable compare(std::vector<MetricsReport> reports) {
    if (reports.empty()) raise(ErrorKind::EmptyInput, "no reports to compare");
    std::sort(reports.begin(), reports.end(),
              [](const MetricsReport& a, const MetricsReport& b) {
                  if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
                  return a.model_name < b.model_name;
              });
    ComparisonTable table;
    for (auto& report : reports) table.rows.push_back({std::move(report)});

    auto flag_best = [&](auto metric, auto flag) {
        double best = -1.0;
        for (const auto& row : table.rows) best = std::max(best, metric(row.report));
        for (auto& row : table.rows) row.*flag = metric(row.report) == best;
    };
    flag_best([](const MetricsReport& r) { return r.accuracy; }, &ComparisonRow::best_accuracy);
    flag_best([](const MetricsReport& r) { return r.precision; }, &ComparisonRow::best_precision);
    flag_best([](const MetricsReport& r) { return r.recall; }, &ComparisonRow::best_recall);
    flag_best([](const MetricsReport& r) { return r.f1; }, &ComparisonRow::best_f1);
    return table;
}

// Percentages rendered to 2 decimal places.
inline std::string percent(double fraction) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << fraction * 100.0 << "%";
    return out.str();
}

inline std::string render_markdown(const ComparisonTable& table) {
    std::ostringstream out;
    out << "| Model | Accuracy | Precision | Recall | f1-score |\n";
    out << "| --- | --- | --- | --- | --- |\n";
    for (const auto& row : table.rows) {
        const MetricsReport& r = row.report;
        out << "| " << r.model_name << " | " << percent(r.accuracy) << " | "
            << percent(r.precision) << " | " << percent(r.recall) << " | "
            << percent(r.f1) << " |\n";
    }
    return out.str();
}

inline std::string render_text(const ComparisonTable& table) {
    std::size_t name_width = 5;
    for (const auto& row : table.rows)
        name_width = std::max(name_width, row.report.model_name.size());
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(name_width + 2)) << "Model"
        << std::right << std::setw(10) << "Accuracy" << std::setw(11) << "Precision"
        << std::setw(8) << "Recall" << std::setw(10) << "f1-score" << "\n";
    for (const auto& row : table.rows) {
        const MetricsReport& r = row.report;
        out << std::left << std::setw(static_cast<int>(name_width + 2)) << r.model_name
            << std::right << std::setw(10) << percent(r.accuracy) << std::setw(11)
            << percent(r.precision) << std::setw(8) << percent(r.recall)
            << std::setw(10) << percent(r.f1);
        if (row.best_accuracy) out << "  <- best accuracy";
        out << "\n";
    }
    return out.str();
}

}  // namespace fakenews
