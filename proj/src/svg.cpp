#include "asdflow/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "asdflow/errors.hpp"
#include "asdflow/io.hpp"

namespace asdflow {

namespace {

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 50.0;

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string escape(const std::string& s) {
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

struct Range {
    double lo;
    double hi;
};

Range padded(double lo, double hi) {
    if (lo > hi) return {0.0, 1.0};
    if (lo == hi) {
        const double pad = lo == 0.0 ? 0.5 : 0.05 * std::abs(lo);
        return {lo - pad, hi + pad};
    }
    return {lo, hi};
}

}  // namespace

std::string render_svg(const std::vector<SvgSeries>& series, const SvgOptions& options) {
    if (options.width <= kLeft + kRight || options.height <= kTop + kBottom)
        throw ArgumentError("render_svg: canvas too small");
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) throw ArgumentError("render_svg: x and y lengths differ");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
                throw ArgumentError("render_svg: non-finite data");
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            ylo = std::min(ylo, s.y[i]);
            yhi = std::max(yhi, s.y[i]);
        }
    }
    const Range xr = padded(xlo, xhi);
    const Range yr = padded(ylo, yhi);
    const double W = options.width;
    const double H = options.height;
    const double pw = W - kLeft - kRight;
    const double ph = H - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(options.width) +
           "\" height=\"" + std::to_string(options.height) + "\" viewBox=\"0 0 " +
           std::to_string(options.width) + " " + std::to_string(options.height) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(options.width) + "\" height=\"" +
           std::to_string(options.height) + "\" fill=\"white\"/>\n";
    if (!options.title.empty())
        out += "<text x=\"" + fmt("%.3f", kLeft + 0.5 * pw) +
               "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
               escape(options.title) + "</text>\n";
    out += "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    out += "<rect x=\"" + fmt("%.3f", kLeft) + "\" y=\"" + fmt("%.3f", kTop) + "\" width=\"" +
           fmt("%.3f", pw) + "\" height=\"" + fmt("%.3f", ph) + "\"/>\n";
    for (int i = 0; i <= 2; ++i) {
        const double fx = xr.lo + 0.5 * i * (xr.hi - xr.lo);
        const double fy = yr.lo + 0.5 * i * (yr.hi - yr.lo);
        out += "<line x1=\"" + fmt("%.3f", px(fx)) + "\" y1=\"" + fmt("%.3f", kTop + ph) + "\" x2=\"" +
               fmt("%.3f", px(fx)) + "\" y2=\"" + fmt("%.3f", kTop + ph + 5) + "\"/>\n";
        out += "<line x1=\"" + fmt("%.3f", kLeft - 5) + "\" y1=\"" + fmt("%.3f", py(fy)) + "\" x2=\"" +
               fmt("%.3f", kLeft) + "\" y2=\"" + fmt("%.3f", py(fy)) + "\"/>\n";
    }
    out += "</g>\n";
    out += "<g id=\"ticks\" font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    for (int i = 0; i <= 2; ++i) {
        const double fx = xr.lo + 0.5 * i * (xr.hi - xr.lo);
        const double fy = yr.lo + 0.5 * i * (yr.hi - yr.lo);
        out += "<text x=\"" + fmt("%.3f", px(fx)) + "\" y=\"" + fmt("%.3f", kTop + ph + 18) +
               "\" text-anchor=\"middle\">" + fmt("%.4g", fx) + "</text>\n";
        out += "<text x=\"" + fmt("%.3f", kLeft - 8) + "\" y=\"" + fmt("%.3f", py(fy) + 4) +
               "\" text-anchor=\"end\">" + fmt("%.4g", fy) + "</text>\n";
    }
    out += "<text x=\"" + fmt("%.3f", kLeft + 0.5 * pw) + "\" y=\"" + fmt("%.3f", H - 10) +
           "\" text-anchor=\"middle\">" + escape(options.x_label) + "</text>\n";
    out += "<text x=\"15\" y=\"" + fmt("%.3f", kTop + 0.5 * ph) + "\" text-anchor=\"middle\" transform=\"rotate(-90 15 " +
           fmt("%.3f", kTop + 0.5 * ph) + ")\">" + escape(options.y_label) + "</text>\n";
    out += "</g>\n";
    out += "<g id=\"series\" fill=\"none\" stroke-width=\"1.5\">\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        out += "<polyline stroke=\"" + std::string(kPalette[s % kPalette.size()]) + "\" points=\"";
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            if (i) out += ' ';
            out += fmt("%.3f", px(series[s].x[i])) + "," + fmt("%.3f", py(series[s].y[i]));
        }
        out += "\"/>\n";
    }
    out += "</g>\n";
    std::size_t row = 0;
    for (std::size_t s = 0; s < series.size(); ++s) {
        if (series[s].label.empty()) continue;
        const double y = kTop + 14.0 + 14.0 * static_cast<double>(row++);
        out += "<text x=\"" + fmt("%.3f", kLeft + pw - 6) + "\" y=\"" + fmt("%.3f", y) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" +
               kPalette[s % kPalette.size()] + "\">" + escape(series[s].label) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

void emit_svg(const std::vector<SvgSeries>& series, const std::filesystem::path& path,
              const SvgOptions& options) {
    write_text(path, render_svg(series, options));
}

}  // namespace asdflow
