#include "ht/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace ht {

namespace {

/*
 Layout (SVG origin top-left, y grows downward):

   +---------------------------------------------+
   |  title                                      |
   |   +---------------------------+  legend     |
   |   |  plot area                |             |
   |   +---------------------------+             |
   |     x ticks / axis label                    |
   +---------------------------------------------+
*/
constexpr double kWidth = 760.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 220.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kPalette[] = {"#2ca02c", "#1f77b4", "#d62728", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#17becf"};

double field_value(const ResultRow& r, RowField field) {
  switch (field) {
    case RowField::alpha:
      return r.alpha;
    case RowField::p:
      return r.p;
    case RowField::q_r:
      return r.q_r;
    case RowField::ft:
      return r.ft ? *r.ft : std::numeric_limits<double>::quiet_NaN();
    case RowField::cos2_r:
      return r.cos2_r;
    case RowField::f:
      return r.f;
    case RowField::fidelity:
      return r.fidelity;
    case RowField::z1:
      return r.z1;
    case RowField::delta_alpha:
      return r.delta_alpha;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string coord(double v) { return fmt("%.2f", v); }

// Short label value: "%g" with "none" for a missing filter.
std::string label_value(const ResultRow& r, RowField field) {
  if (field == RowField::ft && !r.ft) return "none";
  return fmt("%g", field_value(r, field));
}

struct GroupKey {
  std::vector<double> values;  // NaN replaced by -1 so keys compare
  bool operator<(const GroupKey& o) const { return values < o.values; }
};

struct Group {
  std::string label;
  bool filtered = false;
  double q_r = 0.0;
  double p = 0.0;
  std::optional<double> ft;
  std::vector<std::pair<double, double>> points;
};

double nice_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

RowField row_field_from_string(const std::string& name) {
  for (RowField f : {RowField::alpha, RowField::p, RowField::q_r, RowField::ft,
                     RowField::cos2_r, RowField::f, RowField::fidelity,
                     RowField::z1, RowField::delta_alpha}) {
    if (to_string(f) == name) return f;
  }
  throw ConfigError("unknown row field '" + name + "'");
}

std::string to_string(RowField field) {
  switch (field) {
    case RowField::alpha:
      return "alpha";
    case RowField::p:
      return "p";
    case RowField::q_r:
      return "q_R";
    case RowField::ft:
      return "ft";
    case RowField::cos2_r:
      return "cos2_r";
    case RowField::f:
      return "f";
    case RowField::fidelity:
      return "F";
    case RowField::z1:
      return "z1";
    case RowField::delta_alpha:
      return "delta_alpha";
  }
  return "?";
}

std::string emit_plot(const std::vector<ResultRow>& rows,
                      const PlotOptions& options) {
  if (rows.empty()) throw EmptyInputError("no rows to plot");

  std::map<GroupKey, Group> groups;
  std::vector<GroupKey> order;
  for (const ResultRow& r : rows) {
    GroupKey key;
    std::string label;
    for (RowField field : options.group_by) {
      const double v = field_value(r, field);
      key.values.push_back(std::isnan(v) ? -1.0 : v);
      if (!label.empty()) label += ", ";
      label += to_string(field) + "=" + label_value(r, field);
    }
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) {
      order.push_back(key);
      it->second.label = label.empty() ? to_string(options.y) : label;
      it->second.filtered = r.ft.has_value();
      it->second.q_r = r.q_r;
      it->second.p = r.p;
      it->second.ft = r.ft;
    }
    it->second.points.emplace_back(r.alpha, field_value(r, options.y));
  }

  // Every group must sample the same alpha grid.
  std::vector<double> grid;
  for (const auto& [alpha, y] : groups.at(order.front()).points) grid.push_back(alpha);
  for (const GroupKey& key : order) {
    std::vector<double> mine;
    for (const auto& [alpha, y] : groups.at(key).points) mine.push_back(alpha);
    if (mine != grid) throw DimensionError("plot groups use different alpha grids");
  }

  double x_lo = *std::min_element(grid.begin(), grid.end());
  double x_hi = *std::max_element(grid.begin(), grid.end());
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;

  double y_lo = std::numeric_limits<double>::infinity();
  double y_hi = -std::numeric_limits<double>::infinity();
  for (const auto& [key, g] : groups) {
    for (const auto& [alpha, y] : g.points) {
      if (std::isnan(y)) continue;
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  const bool fef_axis = options.y == RowField::f || options.y == RowField::fidelity;
  if (fef_axis) {
    y_lo = std::min(y_lo, 0.4);
    y_hi = std::max(y_hi, 1.0);
  }
  if (!std::isfinite(y_lo)) {
    y_lo = 0.0;
    y_hi = 1.0;
  }
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  const double y_step = nice_step(y_hi - y_lo);
  y_lo = std::floor(y_lo / y_step + 1e-9) * y_step;
  y_hi = std::ceil(y_hi / y_step - 1e-9) * y_step;
  const double x_step = nice_step(x_hi - x_lo);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto sy = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  bool any_filtered = false;
  double max_q_r = -1.0;
  std::set<double> p_values, q_values;
  for (const auto& [key, g] : groups) {
    any_filtered = any_filtered || g.filtered;
    max_q_r = std::max(max_q_r, g.q_r);
    p_values.insert(g.p);
    q_values.insert(g.q_r);
  }
  // Filtered figures color by q_R, unfiltered ones by p.
  auto color_for = [&](const Group& g) {
    const std::set<double>& domain = any_filtered ? q_values : p_values;
    const double v = any_filtered ? g.q_r : g.p;
    std::size_t idx = 0;
    if (any_filtered) {
      // Descending q_R so q_R = 1 takes the first color.
      idx = static_cast<std::size_t>(std::distance(domain.upper_bound(v), domain.end()));
    } else {
      idx = static_cast<std::size_t>(std::distance(domain.begin(), domain.find(v)));
    }
    return kPalette[idx % (sizeof kPalette / sizeof kPalette[0])];
  };
  auto dashed = [&](const Group& g) {
    return any_filtered ? !g.filtered : g.q_r < max_q_r;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << coord(kLeft) << "\" y=\"24\" font-size=\"14\">"
        << options.title << "</text>\n";
  }

  svg << "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n"
      << "<rect x=\"" << coord(kLeft) << "\" y=\"" << coord(kTop) << "\" width=\""
      << coord(plot_w) << "\" height=\"" << coord(plot_h) << "\"/>\n";
  for (double x = std::ceil(x_lo / x_step - 1e-9) * x_step; x <= x_hi + 1e-9;
       x += x_step) {
    svg << "<line x1=\"" << coord(sx(x)) << "\" y1=\"" << coord(kTop + plot_h)
        << "\" x2=\"" << coord(sx(x)) << "\" y2=\"" << coord(kTop + plot_h + 5)
        << "\"/>\n";
  }
  for (double y = y_lo; y <= y_hi + 1e-9; y += y_step) {
    svg << "<line x1=\"" << coord(kLeft - 5) << "\" y1=\"" << coord(sy(y))
        << "\" x2=\"" << coord(kLeft) << "\" y2=\"" << coord(sy(y)) << "\"/>\n";
  }
  svg << "</g>\n<g class=\"ticks\" fill=\"black\">\n";
  for (double x = std::ceil(x_lo / x_step - 1e-9) * x_step; x <= x_hi + 1e-9;
       x += x_step) {
    svg << "<text x=\"" << coord(sx(x)) << "\" y=\"" << coord(kTop + plot_h + 20)
        << "\" text-anchor=\"middle\">" << fmt("%g", std::abs(x) < 1e-12 ? 0.0 : x)
        << "</text>\n";
  }
  for (double y = y_lo; y <= y_hi + 1e-9; y += y_step) {
    svg << "<text x=\"" << coord(kLeft - 8) << "\" y=\"" << coord(sy(y) + 4)
        << "\" text-anchor=\"end\">" << fmt("%g", std::abs(y) < 1e-12 ? 0.0 : y)
        << "</text>\n";
  }
  svg << "<text x=\"" << coord(kLeft + plot_w / 2) << "\" y=\""
      << coord(kHeight - 15) << "\" text-anchor=\"middle\">alpha</text>\n"
      << "<text x=\"18\" y=\"" << coord(kTop + plot_h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << coord(kTop + plot_h / 2) << ")\">" << to_string(options.y)
      << "</text>\n</g>\n";

  std::optional<double> reference;
  if (options.y == RowField::f) reference = 0.5;
  if (options.y == RowField::fidelity) reference = 2.0 / 3.0;
  if (reference) {
    svg << "<g class=\"reference\">\n<line x1=\"" << coord(kLeft) << "\" y1=\""
        << coord(sy(*reference)) << "\" x2=\"" << coord(kLeft + plot_w)
        << "\" y2=\"" << coord(sy(*reference))
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n<text x=\""
        << coord(kLeft + plot_w - 4) << "\" y=\"" << coord(sy(*reference) - 4)
        << "\" text-anchor=\"end\">classical bound</text>\n</g>\n";
  }

  svg << "<g class=\"series\" fill=\"none\" stroke-width=\"1.5\">\n";
  for (const GroupKey& key : order) {
    const Group& g = groups.at(key);
    svg << "<polyline stroke=\"" << color_for(g) << "\"";
    if (dashed(g)) svg << " stroke-dasharray=\"6 4\"";
    svg << " points=\"";
    bool first = true;
    for (const auto& [alpha, y] : g.points) {
      if (std::isnan(y)) continue;
      if (!first) svg << ' ';
      svg << coord(sx(alpha)) << ',' << coord(sy(std::clamp(y, y_lo, y_hi)));
      first = false;
    }
    svg << "\"><title>" << g.label << "</title></polyline>\n";
  }
  svg << "</g>\n<g class=\"legend\">\n";
  double ly = kTop + 10.0;
  const double lx = kLeft + plot_w + 15.0;
  for (const GroupKey& key : order) {
    const Group& g = groups.at(key);
    svg << "<line x1=\"" << coord(lx) << "\" y1=\"" << coord(ly) << "\" x2=\""
        << coord(lx + 30) << "\" y2=\"" << coord(ly) << "\" stroke=\""
        << color_for(g) << "\" stroke-width=\"1.5\"";
    if (dashed(g)) svg << " stroke-dasharray=\"6 4\"";
    svg << "/>\n<text x=\"" << coord(lx + 36) << "\" y=\"" << coord(ly + 4)
        << "\">" << g.label << "</text>\n";
    ly += 18.0;
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace ht
