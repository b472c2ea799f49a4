#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mbc/analysis.hpp"

namespace mbc::cli {

struct PlotSeries {
    std::string label;
    GrowthSeries points;
    // Drawn as a line and quoted in the legend when present.
    std::optional<LogLogFit> fit;
    // Left end of the fitted line; the plot's left edge when absent.
    std::optional<std::uint64_t> fit_from;
};

// Log-log scatter plot with one color per series, fitted lines and a legend
// carrying each slope. Points with value 0 are not drawn.
std::string render_loglog_svg(const std::string& title, const std::string& y_label,
                              const std::vector<PlotSeries>& series);

}  // namespace mbc::cli
