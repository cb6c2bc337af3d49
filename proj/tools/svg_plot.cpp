#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dimerfl::plot {

namespace {

constexpr int kW = 840, kH = 560;
constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(hi > lo)) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            const double p = 0.04 * (hi - lo);
            lo -= p;
            hi += p;
        }
    }
};

double warp(double v, bool logscale) { return logscale ? std::log10(std::max(v, 1e-300)) : v; }

}  // namespace

std::string render_lines(const std::vector<Line>& lines, const std::string& title,
                         const std::string& xlabel, const std::string& ylabel, bool logx,
                         bool logy) {
    Range rx, ry;
    for (const auto& l : lines)
        for (std::size_t i = 0; i < l.x.size(); ++i) {
            if (logx && !(l.x[i] > 0)) continue;
            if (logy && !(l.y[i] > 0)) continue;
            rx.add(warp(l.x[i], logx));
            ry.add(warp(l.y[i], logy));
        }
    rx.pad();
    ry.pad();
    auto px = [&](double v) {
        return kMarginL + (warp(v, logx) - rx.lo) / (rx.hi - rx.lo) * (kW - kMarginL - kMarginR);
    };
    auto py = [&](double v) {
        return kH - kMarginB -
               (warp(v, logy) - ry.lo) / (ry.hi - ry.lo) * (kH - kMarginT - kMarginB);
    };

    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW << "' height='" << kH
       << "' viewBox='0 0 " << kW << " " << kH << "'>\n"
       << "<rect width='100%' height='100%' fill='white'/>\n"
       << "<text x='" << kW / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
       << "</text>\n"
       << "<text x='" << kW / 2 << "' y='" << kH - 12 << "' text-anchor='middle' font-size='13'>"
       << xlabel << "</text>\n"
       << "<text x='16' y='" << kH / 2
       << "' text-anchor='middle' font-size='13' transform='rotate(-90 16 " << kH / 2 << ")'>"
       << ylabel << "</text>\n"
       << "<rect x='" << kMarginL << "' y='" << kMarginT << "' width='"
       << kW - kMarginL - kMarginR << "' height='" << kH - kMarginT - kMarginB
       << "' fill='none' stroke='black'/>\n";
    // axis ticks
    for (int t = 0; t <= 5; ++t) {
        const double fx = rx.lo + (rx.hi - rx.lo) * t / 5.0;
        const double fy = ry.lo + (ry.hi - ry.lo) * t / 5.0;
        const double gx = kMarginL + double(t) / 5.0 * (kW - kMarginL - kMarginR);
        const double gy = kH - kMarginB - double(t) / 5.0 * (kH - kMarginT - kMarginB);
        os << "<text x='" << gx << "' y='" << kH - kMarginB + 16
           << "' text-anchor='middle' font-size='11'>" << (logx ? "1e" : "") << num(fx)
           << "</text>\n";
        os << "<text x='" << kMarginL - 6 << "' y='" << gy + 4
           << "' text-anchor='end' font-size='11'>" << (logy ? "1e" : "") << num(fy)
           << "</text>\n";
    }
    int ci = 0;
    int ly = kMarginT + 14;
    for (const auto& l : lines) {
        const char* color = kColors[ci % 8];
        os << "<polyline fill='none' stroke='" << color << "' stroke-width='1.4' points='";
        for (std::size_t i = 0; i < l.x.size(); ++i) {
            if (logx && !(l.x[i] > 0)) continue;
            if (logy && !(l.y[i] > 0)) continue;
            os << num(px(l.x[i])) << "," << num(py(l.y[i])) << " ";
        }
        os << "'/>\n";
        if (!l.label.empty()) {
            os << "<line x1='" << kW - 180 << "' y1='" << ly << "' x2='" << kW - 150 << "' y2='"
               << ly << "' stroke='" << color << "' stroke-width='2'/>\n"
               << "<text x='" << kW - 144 << "' y='" << ly + 4 << "' font-size='12'>" << l.label
               << "</text>\n";
            ly += 16;
        }
        ++ci;
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_heatmap(const std::vector<double>& xs, const std::vector<double>& ys,
                           const std::vector<std::vector<double>>& values,
                           const std::string& title, const std::string& xlabel,
                           const std::string& ylabel, bool lognorm) {
    Range rv;
    for (const auto& row : values)
        for (double v : row) rv.add(lognorm ? warp(v, true) : v);
    if (!(rv.hi > rv.lo)) rv.pad();

    const double cw = double(kW - kMarginL - kMarginR) / xs.size();
    const double ch = double(kH - kMarginT - kMarginB) / ys.size();
    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW << "' height='" << kH
       << "' viewBox='0 0 " << kW << " " << kH << "'>\n"
       << "<rect width='100%' height='100%' fill='white'/>\n"
       << "<text x='" << kW / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
       << "</text>\n"
       << "<text x='" << kW / 2 << "' y='" << kH - 12 << "' text-anchor='middle' font-size='13'>"
       << xlabel << "</text>\n"
       << "<text x='16' y='" << kH / 2
       << "' text-anchor='middle' font-size='13' transform='rotate(-90 16 " << kH / 2 << ")'>"
       << ylabel << "</text>\n";
    for (std::size_t iy = 0; iy < ys.size(); ++iy) {
        for (std::size_t ix = 0; ix < xs.size(); ++ix) {
            double v = values[iy][ix];
            if (lognorm) v = warp(v, true);
            double f = (v - rv.lo) / (rv.hi - rv.lo);
            f = std::clamp(f, 0.0, 1.0);
            const int r = int(255 * f);
            const int b = int(255 * (1.0 - f));
            const int g = int(80 * (1.0 - std::abs(2 * f - 1)));
            const double x = kMarginL + ix * cw;
            const double y = kH - kMarginB - (iy + 1) * ch;
            os << "<rect x='" << num(x) << "' y='" << num(y) << "' width='" << num(cw + 0.5)
               << "' height='" << num(ch + 0.5) << "' fill='rgb(" << r << "," << g << "," << b
               << ")'/>\n";
        }
    }
    os << "<text x='" << kMarginL << "' y='" << kH - kMarginB + 16 << "' font-size='11'>"
       << num(xs.front()) << "</text>\n"
       << "<text x='" << kW - kMarginR << "' y='" << kH - kMarginB + 16
       << "' text-anchor='end' font-size='11'>" << num(xs.back()) << "</text>\n"
       << "<text x='" << kMarginL - 6 << "' y='" << kH - kMarginB
       << "' text-anchor='end' font-size='11'>" << num(ys.front()) << "</text>\n"
       << "<text x='" << kMarginL - 6 << "' y='" << kMarginT + 10
       << "' text-anchor='end' font-size='11'>" << num(ys.back()) << "</text>\n"
       << "</svg>\n";
    return os.str();
}

}  // namespace dimerfl::plot
