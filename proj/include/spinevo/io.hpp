#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "spinevo/evolution.hpp"

namespace spinevo {

/// Round-trip-safe fixed formatting (17 significant digits) so identical
/// runs produce byte-identical files.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_trace_csv(std::ostream& os, const EvolutionTrace& tr) {
  os << "t,gnt,P,R,S_e\n";
  for (const auto& r : tr.rows)
    os << format_double(r.t) << ',' << format_double(r.gnt) << ',' << format_double(r.survival)
       << ',' << format_double(r.upper_fraction) << ',' << format_double(r.entropy) << '\n';
}

// Flat key-value report, one datum per line.
struct Report {
  std::vector<std::pair<std::string, std::string>> items;

  void add(const std::string& key, const std::string& value) { items.emplace_back(key, value); }
  void add(const std::string& key, double value) { items.emplace_back(key, format_double(value)); }
  void add(const std::string& key, int value) { items.emplace_back(key, std::to_string(value)); }

  void write(std::ostream& os) const {
    for (const auto& [k, v] : items) os << k << " = " << v << '\n';
  }
};

// Column-oriented table for figure data and sweeps.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write_csv(std::ostream& os) const {
    for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << '\n';
    }
  }
};

/// Minimal polyline plot of table columns (first column = x axis) for a
/// quick look at figure output without external tooling.
inline void write_table_svg(std::ostream& os, const Table& table, const std::string& title) {
  const double W = 840, H = 560, ml = 70, mr = 20, mt = 40, mb = 50;
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  std::vector<std::vector<double>> cols(table.header.size());
  for (const auto& row : table.rows)
    for (size_t c = 0; c < row.size(); ++c)
      cols[c].push_back(row[c].empty() ? std::nan("") : std::stod(row[c]));
  if (cols.empty() || cols[0].empty()) return;
  double xmin = cols[0].front(), xmax = cols[0].back();
  double ymin = 0.0, ymax = 0.0;
  bool first = true;
  for (size_t c = 1; c < cols.size(); ++c)
    for (double v : cols[c]) {
      if (std::isnan(v)) continue;
      if (first) { ymin = ymax = v; first = false; }
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto Y = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
     << "</text>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\"" << H - mb
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 14 << "\" text-anchor=\"middle\" font-size=\"13\">"
     << table.header[0] << "</text>\n";
  for (size_t c = 1; c < cols.size(); ++c) {
    os << "<polyline fill=\"none\" stroke=\"" << colors[(c - 1) % 8] << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < cols[c].size(); ++i) {
      if (std::isnan(cols[c][i])) continue;
      os << X(cols[0][i]) << ',' << Y(cols[c][i]) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << W - mr - 8 << "\" y=\"" << mt + 16 * c << "\" text-anchor=\"end\" font-size=\"12\" fill=\""
       << colors[(c - 1) % 8] << "\">" << table.header[c] << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace spinevo
