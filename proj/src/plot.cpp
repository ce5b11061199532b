#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dfkg {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg_plot(const std::string& title,
                            const std::string& xlabel,
                            const std::string& ylabel,
                            const PlotSeries& series, bool log_y) {
  if (series.x.empty() || series.x.size() != series.y.size())
    throw std::invalid_argument("plot: series must be nonempty and aligned");

  std::vector<double> ys = series.y;
  if (log_y) {
    for (size_t i = 0; i < ys.size(); ++i) {
      if (!(ys[i] > 0.0))
        throw std::invalid_argument(
            "plot: log scale needs positive values; offending index " +
            std::to_string(i));
      ys[i] = std::log10(ys[i]);
    }
  }

  const double W = 640.0, H = 480.0;
  const double ml = 70.0, mr = 20.0, mt = 40.0, mb = 55.0;
  double xmin = *std::min_element(series.x.begin(), series.x.end());
  double xmax = *std::max_element(series.x.begin(), series.x.end());
  double ymin = *std::min_element(ys.begin(), ys.end());
  double ymax = *std::max_element(ys.begin(), ys.end());
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr);
  };
  auto py = [&](double y) {
    return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) +
         "\" height=\"" + fmt(H) + "\" viewBox=\"0 0 " + fmt(W) + " " +
         fmt(H) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt(W / 2) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" +
         escape_xml(title) + "</text>\n";

  // axes
  svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(H - mb) + "\" x2=\"" +
         fmt(W - mr) + "\" y2=\"" + fmt(H - mb) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" +
         fmt(ml) + "\" y2=\"" + fmt(H - mb) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // ticks
  for (int i = 0; i <= 5; ++i) {
    const double tx = xmin + (xmax - xmin) * i / 5.0;
    const double X = px(tx);
    svg += "<line x1=\"" + fmt(X) + "\" y1=\"" + fmt(H - mb) + "\" x2=\"" +
           fmt(X) + "\" y2=\"" + fmt(H - mb + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(X) + "\" y=\"" + fmt(H - mb + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           fmt(tx) + "</text>\n";
    const double ty = ymin + (ymax - ymin) * i / 5.0;
    const double Y = py(ty);
    svg += "<line x1=\"" + fmt(ml - 5) + "\" y1=\"" + fmt(Y) + "\" x2=\"" +
           fmt(ml) + "\" y2=\"" + fmt(Y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(ml - 9) + "\" y=\"" + fmt(Y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           fmt(ty) + "</text>\n";
  }

  svg += "<text x=\"" + fmt((ml + W - mr) / 2) + "\" y=\"" + fmt(H - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" +
         escape_xml(xlabel) + "</text>\n";
  svg += "<text x=\"18\" y=\"" + fmt((mt + H - mb) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 " +
         fmt((mt + H - mb) / 2) + ")\">" +
         escape_xml(log_y ? "log10 " + ylabel : ylabel) + "</text>\n";

  svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" "
         "points=\"";
  for (size_t i = 0; i < series.x.size(); ++i) {
    if (i) svg += " ";
    svg += fmt(px(series.x[i])) + "," + fmt(py(ys[i]));
  }
  svg += "\"/>\n</svg>\n";
  return svg;
}

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const PlotSeries& series, bool log_y) {
  const std::string svg = render_svg_plot(title, xlabel, ylabel, series, log_y);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("plot: cannot write '" + path + "'");
  out << svg;
  if (!out) throw std::runtime_error("plot: write failed for '" + path + "'");
}

}  // namespace dfkg
