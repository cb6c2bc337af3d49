#pragma once

#include <string>
#include <vector>

namespace dimerfl::plot {

struct Line {
    std::string label;
    std::vector<double> x, y;
};

/// Minimal static SVG renderer for line plots (linear or log-log axes).
/// Keeps the CLI free of plotting dependencies; output is deterministic.
std::string render_lines(const std::vector<Line>& lines, const std::string& title,
                         const std::string& xlabel, const std::string& ylabel,
                         bool logx = false, bool logy = false);

/// Heatmap of a row-major matrix; rows indexed by ys, columns by xs.
std::string render_heatmap(const std::vector<double>& xs, const std::vector<double>& ys,
                           const std::vector<std::vector<double>>& values,
                           const std::string& title, const std::string& xlabel,
                           const std::string& ylabel, bool lognorm = false);

}  // namespace dimerfl::plot
