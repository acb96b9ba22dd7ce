#pragma once

// Report emission for benchmark results: a markdown comparison table, a
// machine-readable results.jsonl (one record per model, no timings — the
// bytes must be identical across reruns of one config), and label
// distribution / metric comparison charts as standalone SVG plus TSV data.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fakenews/benchmark.hpp"
#include "fakenews/error.hpp"
#include "fakenews/metrics.hpp"

namespace fakenews {

namespace report_detail {

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorKind::IoError, "cannot write " + path);
    out << content;
    if (!out) raise(ErrorKind::IoError, "failed writing " + path);
}

inline std::string fmt(double value, int digits = 2) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << value;
    return out.str();
}

struct Bar {
    std::string label;
    double value;       // 0..1
    std::string color;
};

// Minimal grouped-bar SVG. Groups render left to right; each group's bars
// share the palette order, with one legend entry per series.
inline std::string bar_chart_svg(const std::string& title,
                                 const std::vector<std::string>& series,
                                 const std::vector<std::string>& groups,
                                 const std::vector<std::vector<double>>& values,
                                 const std::string& value_suffix) {
    static const char* palette[] = {"#4878a8", "#e49444", "#6aa56e", "#b65555"};
    const int bar_w = 26, bar_gap = 4, group_gap = 36;
    const int chart_h = 260, margin_l = 56, margin_t = 48, margin_b = 64;
    const int group_w =
        static_cast<int>(series.size()) * (bar_w + bar_gap) - bar_gap + group_gap;
    const int width = margin_l + group_w * static_cast<int>(groups.size()) + 24;
    const int height = margin_t + chart_h + margin_b;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << margin_l << "\" y=\"24\" font-family=\"sans-serif\" "
           "font-size=\"15\" font-weight=\"bold\">"
        << title << "</text>\n";

    double max_value = 0.0;
    for (const auto& group : values)
        for (double v : group) max_value = std::max(max_value, v);
    if (max_value <= 0.0) max_value = 1.0;

    // horizontal gridlines at quarters of the max
    for (int q = 0; q <= 4; ++q) {
        const double frac = q / 4.0;
        const int y = margin_t + chart_h - static_cast<int>(frac * chart_h);
        svg << "<line x1=\"" << margin_l << "\" y1=\"" << y << "\" x2=\""
            << width - 16 << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << margin_l - 6 << "\" y=\"" << y + 4
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">"
            << fmt(frac * max_value * 100.0, 0) << value_suffix << "</text>\n";
    }

    for (std::size_t g = 0; g < groups.size(); ++g) {
        const int gx = margin_l + static_cast<int>(g) * group_w;
        for (std::size_t s = 0; s < series.size(); ++s) {
            const double v = values[g][s];
            const int h = static_cast<int>(v / max_value * chart_h);
            const int x = gx + static_cast<int>(s) * (bar_w + bar_gap);
            const int y = margin_t + chart_h - h;
            svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << bar_w
                << "\" height=\"" << h << "\" fill=\"" << palette[s % 4] << "\"/>\n";
            svg << "<text x=\"" << x + bar_w / 2 << "\" y=\"" << y - 3
                << "\" font-family=\"sans-serif\" font-size=\"9\" text-anchor=\"middle\">"
                << fmt(v * 100.0, 1) << "</text>\n";
        }
        svg << "<text x=\"" << gx + (group_w - group_gap) / 2 << "\" y=\""
            << margin_t + chart_h + 16
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
            << groups[g] << "</text>\n";
    }

    if (series.size() > 1) {
        int lx = margin_l;
        const int ly = margin_t + chart_h + 36;
        for (std::size_t s = 0; s < series.size(); ++s) {
            svg << "<rect x=\"" << lx << "\" y=\"" << ly - 9
                << "\" width=\"10\" height=\"10\" fill=\"" << palette[s % 4] << "\"/>\n";
            svg << "<text x=\"" << lx + 14 << "\" y=\"" << ly
                << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[s]
                << "</text>\n";
            lx += 14 + 8 * static_cast<int>(series[s].size()) + 18;
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace report_detail

inline std::string distribution_svg(const LabelCounts& counts) {
    const double total = static_cast<double>(std::max<std::size_t>(1, counts.total()));
    return report_detail::bar_chart_svg(
        "Distribution of Real vs Fake news", {"share"}, {"Real", "Fake"},
        {{static_cast<double>(counts.real) / total},
         {static_cast<double>(counts.fake) / total}},
        "%");
}

inline std::string comparison_svg(const ComparisonTable& table) {
    std::vector<std::string> groups;
    std::vector<std::vector<double>> values;
    for (const auto& row : table.rows) {
        groups.push_back(row.report.model_name);
        values.push_back(
            {row.report.accuracy, row.report.precision, row.report.recall, row.report.f1});
    }
    return report_detail::bar_chart_svg("Model comparison",
                                        {"Accuracy", "Precision", "Recall", "f1-score"},
                                        groups, values, "%");
}

inline std::string distribution_tsv(const LabelCounts& counts) {
    std::ostringstream out;
    out << "label\tcount\n";
    out << "real\t" << counts.real << '\n';
    out << "fake\t" << counts.fake << '\n';
    return out.str();
}

inline std::string comparison_tsv(const ComparisonTable& table) {
    std::ostringstream out;
    out << "model\taccuracy\tprecision\trecall\tf1\n";
    for (const auto& row : table.rows) {
        const MetricsReport& r = row.report;
        out << r.model_name << '\t' << report_detail::fmt(r.accuracy, 6) << '\t'
            << report_detail::fmt(r.precision, 6) << '\t'
            << report_detail::fmt(r.recall, 6) << '\t' << report_detail::fmt(r.f1, 6)
            << '\n';
    }
    return out.str();
}

inline std::string results_records(const BenchmarkResult& result) {
    std::ostringstream out;
    for (const ModelOutcome& outcome : result.outcomes) {
        nlohmann::ordered_json record;
        record["model"] = to_string(outcome.kind);
        record["name"] = outcome.report.model_name;
        record["accuracy"] = outcome.report.accuracy;
        record["precision"] = outcome.report.precision;
        record["recall"] = outcome.report.recall;
        record["f1"] = outcome.report.f1;
        record["tp"] = outcome.report.confusion.tp;
        record["fp"] = outcome.report.confusion.fp;
        record["fn"] = outcome.report.confusion.fn;
        record["tn"] = outcome.report.confusion.tn;
        record["train_size"] = result.train_size;
        record["test_size"] = result.test_size;
        record["dataset_rows"] = result.stats.rows;
        record["dropped_rows"] = result.stats.dropped;
        record["real_count"] = result.stats.distribution.real;
        record["fake_count"] = result.stats.distribution.fake;
        record["test_fraction"] = result.config.split.test_fraction;
        record["split_seed"] = result.config.split.seed;
        record["min_df"] = result.config.min_df;
        record["seed"] = result.config.seed;
        out << record.dump() << '\n';
    }
    return out.str();
}

struct ParsedRecords {
    std::vector<MetricsReport> reports;
    LabelCounts distribution;
    bool has_distribution = false;
};

inline ParsedRecords parse_results_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::FileNotFound, "cannot open results file: " + path);
    ParsedRecords parsed;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
        if (record.is_discarded())
            raise(ErrorKind::MalformedCsv,
                  path + ": line " + std::to_string(line_no) + " is not valid JSON");
        MetricsReport report;
        report.model_name = record.at("name").get<std::string>();
        report.accuracy = record.at("accuracy").get<double>();
        report.precision = record.at("precision").get<double>();
        report.recall = record.at("recall").get<double>();
        report.f1 = record.at("f1").get<double>();
        report.confusion.tp = record.at("tp").get<std::size_t>();
        report.confusion.fp = record.at("fp").get<std::size_t>();
        report.confusion.fn = record.at("fn").get<std::size_t>();
        report.confusion.tn = record.at("tn").get<std::size_t>();
        parsed.reports.push_back(std::move(report));
        if (record.contains("real_count")) {
            parsed.distribution.real = record.at("real_count").get<std::size_t>();
            parsed.distribution.fake = record.at("fake_count").get<std::size_t>();
            parsed.has_distribution = true;
        }
    }
    if (parsed.reports.empty())
        raise(ErrorKind::EmptyInput, path + ": no result records");
    return parsed;
}

// Writes comparison.md, results.jsonl, distribution.tsv/.svg and
// comparison.tsv/.svg into out_dir (created on demand); reruns overwrite
// deterministically. Returns the written paths.
inline std::vector<std::string> emit_report(const BenchmarkResult& result,
                                            const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        raise(ErrorKind::IoError, "cannot create output directory " + out_dir + ": " +
                                      ec.message());

    std::vector<MetricsReport> reports;
    for (const ModelOutcome& outcome : result.outcomes) reports.push_back(outcome.report);
    const ComparisonTable table = compare(reports);

    std::vector<std::string> written;
    auto emit = [&](const char* name, const std::string& content) {
        const std::string path = (fs::path(out_dir) / name).string();
        report_detail::write_file(path, content);
        written.push_back(path);
    };
    emit("comparison.md", render_markdown(table));
    emit("results.jsonl", results_records(result));
    emit("distribution.tsv", distribution_tsv(result.stats.distribution));
    emit("distribution.svg", distribution_svg(result.stats.distribution));
    emit("comparison.tsv", comparison_tsv(table));
    emit("comparison.svg", comparison_svg(table));
    return written;
}

}  // namespace fakenews
