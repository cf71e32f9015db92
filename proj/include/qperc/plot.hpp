// Copyright 2026 The qperc developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal SVG line plots from the experiment CSV. Every byte of the
// output is produced through fixed-format snprintf, so identical inputs
// give identical files — the plots participate in the determinism
// contract, not just the numbers.
//
// When the CSV holds several seeds, each series shows the per-iteration
// mean across seeds for its (method, metric) pair.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qperc/errors.hpp"

namespace qperc {

inline constexpr const char *kCsvHeader =
    "method,seed,iteration,train_error,test_error,loss,accuracy";

// Fixed plot geometry (pixels). Exposed so tests can recompute the
// affine data-to-pixel map independently.
inline constexpr double kPlotWidth = 800.0;
inline constexpr double kPlotHeight = 500.0;
inline constexpr double kPlotMarginLeft = 70.0;
inline constexpr double kPlotMarginRight = 20.0;
inline constexpr double kPlotMarginTop = 20.0;
inline constexpr double kPlotMarginBottom = 50.0;

struct CsvRow {
    std::string method;
    std::uint64_t seed = 0;
    int iteration = 0;
    double train_error = 0.0;
    double test_error = 0.0;
    double loss = 0.0;
    int accuracy = 0;
};

/// One requested line: a method name plus one of the four metric columns.
struct SeriesSpec {
    std::string method;
    std::string metric;

    std::string label() const { return method + ":" + metric; }
};

namespace detail {

inline double parse_csv_double(const std::string &s, int line_no) {
    const char *begin = s.c_str();
    char *end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || end != begin + s.size()) {
        throw DomainError("plot: malformed number '" + s + "' on CSV line " +
                          std::to_string(line_no));
    }
    return v;
}

inline std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    return fields;
}

inline bool known_metric(const std::string &metric) {
    return metric == "train_error" || metric == "test_error" || metric == "loss" ||
           metric == "accuracy";
}

inline double metric_value(const CsvRow &row, const std::string &metric) {
    if (metric == "train_error") return row.train_error;
    if (metric == "test_error") return row.test_error;
    if (metric == "loss") return row.loss;
    return static_cast<double>(row.accuracy);
}

} // namespace detail

inline std::vector<CsvRow> read_result_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw IoError("plot: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw DomainError("plot: empty CSV '" + path + "'");
    if (line == std::string(kCsvHeader) + "\r") line.pop_back();
    if (line != kCsvHeader) {
        throw DomainError("plot: unexpected CSV header '" + line + "'");
    }
    std::vector<CsvRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::vector<std::string> f = detail::split_csv_line(line);
        if (f.size() != 7) {
            throw DomainError("plot: CSV line " + std::to_string(line_no) + " has " +
                              std::to_string(f.size()) + " fields, expected 7");
        }
        CsvRow row;
        row.method = f[0];
        row.seed = static_cast<std::uint64_t>(
            detail::parse_csv_double(f[1], line_no));
        row.iteration = static_cast<int>(detail::parse_csv_double(f[2], line_no));
        row.train_error = detail::parse_csv_double(f[3], line_no);
        row.test_error = detail::parse_csv_double(f[4], line_no);
        row.loss = detail::parse_csv_double(f[5], line_no);
        row.accuracy = static_cast<int>(detail::parse_csv_double(f[6], line_no));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DomainError("plot: CSV '" + path + "' has no data rows");
    return rows;
}

/// Per-iteration mean of one metric for one method, ordered by iteration.
inline std::vector<std::pair<int, double>> series_points(const std::vector<CsvRow> &rows,
                                                         const SeriesSpec &spec) {
    std::map<int, std::pair<double, int>> sums; // iteration -> (sum, count)
    for (const CsvRow &row : rows) {
        if (row.method != spec.method) continue;
        auto &slot = sums[row.iteration];
        slot.first += detail::metric_value(row, spec.metric);
        slot.second += 1;
    }
    std::vector<std::pair<int, double>> points;
    points.reserve(sums.size());
    for (const auto &kv : sums) {
        points.emplace_back(kv.first, kv.second.first / kv.second.second);
    }
    return points;
}

inline void emit_plot(const std::string &csv_path, const std::vector<SeriesSpec> &specs,
                      const std::string &svg_path) {
    if (specs.empty()) throw DomainError("plot: no series requested");
    const std::vector<CsvRow> rows = read_result_csv(csv_path);

    std::vector<std::vector<std::pair<int, double>>> series;
    for (const SeriesSpec &spec : specs) {
        bool method_present = false;
        for (const CsvRow &row : rows) {
            if (row.method == spec.method) {
                method_present = true;
                break;
            }
        }
        if (!method_present || !detail::known_metric(spec.metric)) {
            std::map<std::string, bool> methods;
            for (const CsvRow &row : rows) methods[row.method] = true;
            std::string available;
            for (const auto &kv : methods) {
                for (const char *metric :
                     {"train_error", "test_error", "loss", "accuracy"}) {
                    if (!available.empty()) available += ", ";
                    available += kv.first + ":" + metric;
                }
            }
            throw DomainError("plot: unknown series '" + spec.label() +
                              "'; available: " + available);
        }
        series.push_back(series_points(rows, spec));
    }

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto &points : series) {
        for (const auto &pt : points) {
            xmin = std::min(xmin, static_cast<double>(pt.first));
            xmax = std::max(xmax, static_cast<double>(pt.first));
            ymin = std::min(ymin, pt.second);
            ymax = std::max(ymax, pt.second);
        }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) {
        ymin -= 0.5;
        ymax += 0.5;
    } else {
        const double pad = 0.05 * (ymax - ymin);
        ymin -= pad;
        ymax += pad;
    }

    const double plot_w = kPlotWidth - kPlotMarginLeft - kPlotMarginRight;
    const double plot_h = kPlotHeight - kPlotMarginTop - kPlotMarginBottom;
    const auto x_pix = [&](double x) {
        return kPlotMarginLeft + (x - xmin) / (xmax - xmin) * plot_w;
    };
    const auto y_pix = [&](double y) {
        return kPlotMarginTop + (ymax - y) / (ymax - ymin) * plot_h;
    };

    static const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
    const std::size_t palette_size = sizeof palette / sizeof palette[0];

    std::string svg;
    char buf[256];
    const auto emit = [&](const char *fmt, auto... args) {
        std::snprintf(buf, sizeof buf, fmt, args...);
        svg += buf;
    };

    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    emit("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
         "viewBox=\"0 0 %.0f %.0f\">\n",
         kPlotWidth, kPlotHeight, kPlotWidth, kPlotHeight);
    emit("<rect width=\"%.0f\" height=\"%.0f\" fill=\"white\"/>\n", kPlotWidth,
         kPlotHeight);
    // Axes.
    emit("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
         kPlotMarginLeft, kPlotMarginTop, kPlotMarginLeft, kPlotMarginTop + plot_h);
    emit("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
         kPlotMarginLeft, kPlotMarginTop + plot_h, kPlotMarginLeft + plot_w,
         kPlotMarginTop + plot_h);
    // Axis labels and extrema ticks.
    emit("<text x=\"%.2f\" y=\"%.2f\" font-size=\"14\" text-anchor=\"middle\">"
         "iteration</text>\n",
         kPlotMarginLeft + plot_w / 2.0, kPlotHeight - 12.0);
    emit("<text x=\"16\" y=\"%.2f\" font-size=\"14\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 16 %.2f)\">value</text>\n",
         kPlotMarginTop + plot_h / 2.0, kPlotMarginTop + plot_h / 2.0);
    emit("<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"end\">%.3g</text>\n",
         kPlotMarginLeft - 4.0, kPlotMarginTop + 4.0, ymax);
    emit("<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"end\">%.3g</text>\n",
         kPlotMarginLeft - 4.0, kPlotMarginTop + plot_h + 4.0, ymin);
    emit("<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"middle\">%.3g</text>\n",
         kPlotMarginLeft, kPlotMarginTop + plot_h + 16.0, xmin);
    emit("<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"middle\">%.3g</text>\n",
         kPlotMarginLeft + plot_w, kPlotMarginTop + plot_h + 16.0, xmax);

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char *color = palette[s % palette_size];
        svg += "<polyline fill=\"none\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series[s].size(); ++i) {
            emit(i == 0 ? "%.2f,%.2f" : " %.2f,%.2f",
                 x_pix(static_cast<double>(series[s][i].first)),
                 y_pix(series[s][i].second));
        }
        svg += "\"/>\n";
        // Legend entry, stacked top-right.
        const double ly = kPlotMarginTop + 16.0 + 18.0 * static_cast<double>(s);
        emit("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" "
             "stroke-width=\"1.5\"/>\n",
             kPlotMarginLeft + plot_w - 150.0, ly, kPlotMarginLeft + plot_w - 126.0, ly,
             color);
        emit("<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%s</text>\n",
             kPlotMarginLeft + plot_w - 120.0, ly + 4.0, specs[s].label().c_str());
    }
    svg += "</svg>\n";

    std::ofstream out(svg_path, std::ios::binary);
    if (!out) throw IoError("plot: cannot open '" + svg_path + "' for writing");
    out << svg;
    if (!out) throw IoError("plot: write to '" + svg_path + "' failed");
}

} // namespace qperc
