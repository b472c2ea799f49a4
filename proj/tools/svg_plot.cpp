#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace mbc::cli {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 220, kTop = 50, kBottom = 60;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string render_loglog_svg(const std::string& title, const std::string& y_label,
                              const std::vector<PlotSeries>& series) {
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& s : series) {
        for (const auto& p : s.points.points()) {
            if (p.value <= 0) continue;
            x_lo = std::min(x_lo, std::log2(static_cast<double>(p.n)));
            x_hi = std::max(x_hi, std::log2(static_cast<double>(p.n)));
            y_lo = std::min(y_lo, std::log2(p.value));
            y_hi = std::max(y_hi, std::log2(p.value));
        }
    }
    if (!(x_lo <= x_hi)) x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    x_lo = std::floor(x_lo), x_hi = std::ceil(x_hi);
    y_lo = std::floor(y_lo), y_hi = std::ceil(y_hi);
    if (x_hi == x_lo) x_hi += 1;
    if (y_hi == y_lo) y_hi += 1;

    const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
    auto sx = [&](double lx) { return kLeft + (lx - x_lo) / (x_hi - x_lo) * plot_w; };
    auto sy = [&](double ly) { return kTop + plot_h - (ly - y_lo) / (y_hi - y_lo) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"25\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(title) << "</text>\n";
    svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    const int x_step = std::max(1, static_cast<int>((x_hi - x_lo) / 8));
    for (int e = static_cast<int>(x_lo); e <= static_cast<int>(x_hi); e += x_step) {
        const double x = sx(e);
        svg << "<line x1=\"" << num(x) << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << num(x) << "\" y2=\""
            << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << num(x) << "\" y=\"" << kTop + plot_h + 20 << "\" text-anchor=\"middle\">2^" << e
            << "</text>\n";
    }
    const int y_step = std::max(1, static_cast<int>((y_hi - y_lo) / 8));
    for (int e = static_cast<int>(y_lo); e <= static_cast<int>(y_hi); e += y_step) {
        const double y = sy(e);
        svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(y) << "\" x2=\"" << kLeft << "\" y2=\"" << num(y)
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">2^" << e
            << "</text>\n";
    }
    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
        << "\" text-anchor=\"middle\">n</text>\n";
    svg << "<text transform=\"translate(20," << kTop + plot_h / 2
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const char* color = kColors[i % std::size(kColors)];
        for (const auto& p : s.points.points()) {
            if (p.value <= 0) continue;
            svg << "<circle cx=\"" << num(sx(std::log2(static_cast<double>(p.n)))) << "\" cy=\""
                << num(sy(std::log2(p.value))) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        std::string legend = s.label;
        if (s.fit) {
            const double a = s.fit_from ? std::max(x_lo, std::log2(static_cast<double>(*s.fit_from))) : x_lo;
            const double b = x_hi;
            svg << "<line x1=\"" << num(sx(a)) << "\" y1=\"" << num(sy(s.fit->intercept + s.fit->slope * a))
                << "\" x2=\"" << num(sx(b)) << "\" y2=\"" << num(sy(s.fit->intercept + s.fit->slope * b))
                << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
            char buf[64];
            std::snprintf(buf, sizeof buf, " (slope %.3f)", std::max(0.0, s.fit->slope));
            legend += buf;
        }
        const double ly = kTop + 15 + 20 * static_cast<double>(i);
        svg << "<circle cx=\"" << kWidth - kRight + 15 << "\" cy=\"" << ly - 4 << "\" r=\"4\" fill=\"" << color
            << "\"/>\n";
        svg << "<text x=\"" << kWidth - kRight + 25 << "\" y=\"" << ly << "\">" << escape(legend) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace mbc::cli
