#pragma once

#include <span>
#include <string>
#include <vector>

#include "tempinf/error.hpp"

namespace tempinf::plot {

/// One line of a chart: y values at x = 1..values.size().
struct Series {
  std::string label;
  std::vector<double> values;
};

/// Render a self-contained line chart (no scripts, no external assets) with
/// one polyline per series, an axis grid, and a legend. Coordinates are
/// rounded before formatting so identical inputs produce identical bytes.
/// Throws InvalidArgument when no series or an empty series is given, Io when
/// the path cannot be written.
void emit_plot(std::span<const Series> series, const std::string& title,
               const std::string& path);

}  // namespace tempinf::plot
