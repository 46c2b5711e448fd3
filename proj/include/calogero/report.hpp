#pragma once

// CSV rows, metadata blocks and static SVG line plots.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace calogero::report {

/// Ordered key/value metadata.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// 17 significant digits, scientific notation.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

inline std::string join(const std::vector<std::string>& fields, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += sep;
        out += fields[i];
    }
    return out;
}

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    std::size_t size() const { return rows_.size(); }
    const std::vector<std::string>& header() const { return header_; }

    /// Metadata as leading "# key=value" lines, then header and rows, LF endings.
    std::string render(const Metadata& meta = {}) const {
        std::string out;
        for (const auto& [k, v] : meta) out += "# " + k + "=" + v + "\n";
        out += join(header_) + "\n";
        for (const auto& r : rows_) out += join(r) + "\n";
        return out;
    }

    /// Numeric column by header name (non-numeric cells become NaN).
    std::vector<double> column(const std::string& name) const {
        const auto it = std::find(header_.begin(), header_.end(), name);
        if (it == header_.end()) return {};
        const std::size_t idx = static_cast<std::size_t>(it - header_.begin());
        std::vector<double> out;
        for (const auto& r : rows_) {
            try {
                out.push_back(std::stod(r.at(idx)));
            } catch (const std::exception&) {
                out.push_back(std::numeric_limits<double>::quiet_NaN());
            }
        }
        return out;
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
};

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

/// Comment bodies may not contain "--".
inline std::string comment_safe(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '-' && !out.empty() && out.back() == '-') out += ' ';
        out += c;
    }
    return out;
}

/// 800x600 static line plot, one polyline per series.
inline std::string render_svg(const std::vector<Series>& series, const PlotOptions& opt, const Metadata& meta = {}) {
    constexpr double width = 800, height = 600, left = 90, right = 30, top = 50, bottom = 70;
    auto tx = [&](double v) { return opt.log_x ? std::log10(v) : v; };
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const Series& s : series)
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!std::isfinite(s.y[i]) || !std::isfinite(s.x[i]) || (opt.log_x && !(s.x[i] > 0))) continue;
            xmin = std::min(xmin, tx(s.x[i]));
            xmax = std::max(xmax, tx(s.x[i]));
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
    if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
    auto px = [&](double v) { return left + (tx(v) - xmin) / (xmax - xmin) * (width - left - right); };
    auto py = [&](double v) { return height - bottom - (v - ymin) / (ymax - ymin) * (height - top - bottom); };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return std::string(buf);
    };
    auto tick = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4g", v);
        return std::string(buf);
    };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" height=\"600\">\n";
    o << "<!--\n";
    for (const auto& [k, v] : meta) o << comment_safe(k + "=" + v) << "\n";
    o << "-->\n";
    o << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    o << "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-size=\"16\">" << xml_escape(opt.title) << "</text>\n";
    o << "<line x1=\"" << num(left) << "\" y1=\"" << num(height - bottom) << "\" x2=\"" << num(width - right) << "\" y2=\""
      << num(height - bottom) << "\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left) << "\" y2=\"" << num(height - bottom)
      << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 4.0;
        const double gx = left + (width - left - right) * i / 4.0;
        o << "<text x=\"" << num(gx) << "\" y=\"" << num(height - bottom + 20) << "\" text-anchor=\"middle\" font-size=\"12\">"
          << tick(opt.log_x ? std::pow(10.0, fx) : fx) << "</text>\n";
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        o << "<text x=\"" << num(left - 8) << "\" y=\"" << num(py(fy) + 4) << "\" text-anchor=\"end\" font-size=\"12\">"
          << tick(fy) << "</text>\n";
    }
    o << "<text x=\"" << num((left + width - right) / 2) << "\" y=\"" << num(height - 20)
      << "\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(opt.x_label + (opt.log_x ? " (log)" : ""))
      << "</text>\n";
    o << "<text x=\"20\" y=\"" << num((top + height - bottom) / 2) << "\" text-anchor=\"middle\" font-size=\"14\" "
      << "transform=\"rotate(-90 20 " << num((top + height - bottom) / 2) << ")\">" << xml_escape(opt.y_label)
      << "</text>\n";
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    for (std::size_t k = 0; k < series.size(); ++k) {
        const Series& s = series[k];
        o << "<polyline fill=\"none\" stroke=\"" << colors[k % 5] << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!std::isfinite(s.y[i]) || !std::isfinite(s.x[i]) || (opt.log_x && !(s.x[i] > 0))) continue;
            if (!first) o << ' ';
            o << num(px(s.x[i])) << ',' << num(py(s.y[i]));
            first = false;
        }
        o << "\"><title>" << xml_escape(s.label) << "</title></polyline>\n";
    }
    o << "</svg>\n";
    return o.str();
}

} // namespace calogero::report
