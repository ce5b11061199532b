#pragma once

#include <string>
#include <vector>

namespace dfkg {

struct PlotSeries {
  std::vector<double> x;
  std::vector<double> y;
};

// Standalone SVG line plot, one series per file, deterministic bytes for
// identical input. log_y plots log10(y) and rejects nonpositive values,
// naming the offending index.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const PlotSeries& series, bool log_y);

std::string render_svg_plot(const std::string& title,
                            const std::string& xlabel,
                            const std::string& ylabel,
                            const PlotSeries& series, bool log_y);

}  // namespace dfkg
