#include "tempinf/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "tempinf/io.hpp"

namespace tempinf::plot {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 540.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 50.0;
constexpr double kMarginBottom = 50.0;
constexpr int kGridLines = 4;  // intervals per axis

constexpr const char* kPalette[] = {"#1f6fb2", "#d1495b", "#3a9d5d", "#8a5fbf",
                                    "#c98a2b", "#3aa6a6", "#7d7d7d", "#b2586f"};

// Fixed two-decimal coordinates keep the byte stream stable across runs.
std::string coord(double v) {
  return format_double(std::round(v * 100.0) / 100.0);
}

std::string tick_label(double v) {
  return format_double(std::round(v * 1e4) / 1e4);
}

std::string escape_text(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
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

void emit_plot(std::span<const Series> series, const std::string& title,
               const std::string& path) {
  if (series.empty()) {
    throw Error(ErrorKind::InvalidArgument, "plot needs at least one series");
  }
  std::size_t max_len = 0;
  double y_min = std::numeric_limits<double>::infinity();
  double y_max = -std::numeric_limits<double>::infinity();
  for (const Series& s : series) {
    if (s.values.empty()) {
      throw Error(ErrorKind::InvalidArgument, "series '" + s.label + "' has no values");
    }
    max_len = std::max(max_len, s.values.size());
    for (double v : s.values) {
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
  }
  if (y_max == y_min) {  // flat data still deserves a visible band
    y_min -= 0.5;
    y_max += 0.5;
  }
  const double x_min = 1.0;
  const double x_max = static_cast<double>(std::max<std::size_t>(max_len, 2));

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto x_of = [&](double x) {
    return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w;
  };
  const auto y_of = [&](double y) {
    return kMarginTop + (y_max - y) / (y_max - y_min) * plot_h;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + coord(kWidth) +
         "\" height=\"" + coord(kHeight) + "\" viewBox=\"0 0 " + coord(kWidth) + " " +
         coord(kHeight) + "\">\n";
  svg += "<rect width=\"" + coord(kWidth) + "\" height=\"" + coord(kHeight) +
         "\" fill=\"white\"/>\n";
  svg += "<text x=\"" + coord(kWidth / 2) + "\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"18\">" + escape_text(title) + "</text>\n";

  // Grid and tick labels.
  for (int g = 0; g <= kGridLines; ++g) {
    const double fy = y_min + (y_max - y_min) * g / kGridLines;
    const double py = y_of(fy);
    svg += "<line x1=\"" + coord(kMarginLeft) + "\" y1=\"" + coord(py) + "\" x2=\"" +
           coord(kWidth - kMarginRight) + "\" y2=\"" + coord(py) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + coord(kMarginLeft - 8) + "\" y=\"" + coord(py + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
           "fill=\"#555555\">" + tick_label(fy) + "</text>\n";

    const double fx = x_min + (x_max - x_min) * g / kGridLines;
    const double px = x_of(fx);
    svg += "<line x1=\"" + coord(px) + "\" y1=\"" + coord(kMarginTop) + "\" x2=\"" +
           coord(px) + "\" y2=\"" + coord(kHeight - kMarginBottom) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + coord(px) + "\" y=\"" + coord(kHeight - kMarginBottom + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
           "fill=\"#555555\">" + tick_label(std::round(fx)) + "</text>\n";
  }
  svg += "<rect x=\"" + coord(kMarginLeft) + "\" y=\"" + coord(kMarginTop) + "\" width=\"" +
         coord(plot_w) + "\" height=\"" + coord(plot_h) +
         "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\"/>\n";

  // One polyline per series.
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string points;
    for (std::size_t i = 0; i < series[s].values.size(); ++i) {
      if (!points.empty()) points += " ";
      points += coord(x_of(static_cast<double>(i + 1))) + "," +
                coord(y_of(series[s].values[i]));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
  }

  // Legend, top-right inside the plot area.
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    const double ly = kMarginTop + 14.0 + 16.0 * static_cast<double>(s);
    const double lx = kWidth - kMarginRight - 150.0;
    svg += "<rect x=\"" + coord(lx) + "\" y=\"" + coord(ly - 8) +
           "\" width=\"10\" height=\"10\" fill=\"" + std::string(color) + "\"/>\n";
    svg += "<text x=\"" + coord(lx + 16) + "\" y=\"" + coord(ly + 1) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape_text(series[s].label) + "</text>\n";
  }
  svg += "</svg>\n";

  write_text_file(path, svg);
}

}  // namespace tempinf::plot
