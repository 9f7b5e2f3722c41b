#pragma once

// Minimal line-plot emitter.  Output depends only on the input values, so
// equal inputs give byte-identical files.

#include <filesystem>
#include <string>
#include <vector>

namespace asdflow {

struct SvgSeries {
    std::string label;  // legend entry; empty for none
    std::vector<double> x;
    std::vector<double> y;
};

struct SvgOptions {
    int width = 640;
    int height = 400;
    std::string title;
    std::string x_label = "x";
    std::string y_label = "r";
};

/// Standalone SVG with a framed axis box, min/mid/max tick labels and one
/// polyline per series.  An empty series list gives the axes over [0,1]^2.
/// Throws ArgumentError on non-finite data or mismatched x/y lengths.
std::string render_svg(const std::vector<SvgSeries>& series, const SvgOptions& options = {});

void emit_svg(const std::vector<SvgSeries>& series, const std::filesystem::path& path,
              const SvgOptions& options = {});

}  // namespace asdflow
