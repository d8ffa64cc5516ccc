// Copyright 2026 The SAWB Workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sawb/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "sawb/common.hpp"
#include "sawb/manifest.hpp"

namespace sawb {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& s, const std::string& origin) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw IoError(origin + ": bad number \"" + s + "\"");
}

std::vector<std::vector<std::string>> read_table(const std::filesystem::path& path,
                                                 const std::string& header) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open for reading");
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw IoError(path.string() + ": unexpected header (want \"" + header + "\")");
  }
  const std::size_t cols = split_csv(header).size();
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != cols) throw IoError(path.string() + ": wrong column count");
    rows.push_back(std::move(f));
  }
  return rows;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  return out;
}

}  // namespace

std::vector<MetricRow> metric_rows(const CellResult& r, bool include_test) {
  std::vector<MetricRow> rows;
  const std::string name = r.cell.name();
  if (!r.folds.empty()) {
    double r2_var = 0.0;
    for (const FoldMetrics& f : r.folds) {
      rows.push_back({name, std::to_string(f.fold), f.rmse, f.r2});
      r2_var += (f.r2 - r.r2_mean) * (f.r2 - r.r2_mean);
    }
    rows.push_back({name, "mean", r.rmse_mean, r.r2_mean});
    rows.push_back({name, "std", r.rmse_std, std::sqrt(r2_var / static_cast<double>(r.folds.size()))});
  }
  if (include_test) rows.push_back({name, "test", r.test_rmse, r.test_r2});
  return rows;
}

void write_metrics_csv(std::span<const MetricRow> rows, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "cell,fold,rmse,r2\n";
  for (const MetricRow& m : rows) {
    out << m.cell << ',' << m.fold << ',' << format_double(m.rmse) << ',' << format_double(m.r2) << '\n';
  }
  if (!out) throw IoError(path.string() + ": write failed");
}

std::vector<MetricRow> read_metrics_csv(const std::filesystem::path& path) {
  std::vector<MetricRow> rows;
  for (const auto& f : read_table(path, "cell,fold,rmse,r2")) {
    rows.push_back({f[0], f[1], parse_number(f[2], path.string()), parse_number(f[3], path.string())});
  }
  return rows;
}

void write_predictions_csv(const EvalReport& report, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "cell,index,truth,estimate,residual\n";
  for (const CellResult& c : report.cells) {
    const std::string name = c.cell.name();
    for (const Prediction& p : c.test_predictions) {
      out << name << ',' << p.index << ',' << format_double(p.truth) << ',' << format_double(p.estimate)
          << ',' << format_double(p.residual()) << '\n';
    }
  }
  if (!out) throw IoError(path.string() + ": write failed");
}

EvalReport read_predictions_csv(const std::filesystem::path& path) {
  EvalReport report;
  for (const auto& f : read_table(path, "cell,index,truth,estimate,residual")) {
    const auto id = CellId::parse(f[0]);
    if (!id) throw IoError(path.string() + ": unknown cell \"" + f[0] + "\"");
    if (report.cells.empty() || !(report.cells.back().cell == *id)) {
      report.cells.emplace_back();
      report.cells.back().cell = *id;
    }
    Prediction p;
    p.index = static_cast<std::size_t>(parse_number(f[1], path.string()));
    p.truth = parse_number(f[2], path.string());
    p.estimate = parse_number(f[3], path.string());
    report.cells.back().test_predictions.push_back(p);
  }
  for (CellResult& c : report.cells) {
    std::vector<double> est, truth;
    for (const Prediction& p : c.test_predictions) {
      est.push_back(p.estimate);
      truth.push_back(p.truth);
    }
    c.test_rmse = rmse(est, truth);
    c.test_r2 = truth.size() >= 2 ? r_squared(est, truth) : 0.0;
  }
  return report;
}

void write_residuals_csv(const CellResult& r, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "estimate,residual\n";
  for (const Prediction& p : r.test_predictions) {
    out << format_double(p.estimate) << ',' << format_double(p.residual()) << '\n';
  }
  if (!out) throw IoError(path.string() + ": write failed");
}

void write_power_error_csv(const PowerErrorTable& t, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "index,m0_heave,m0_pitch,m0_roll,abs_error\n";
  for (const PowerErrorRow& r : t.rows) {
    out << r.index << ',' << format_double(r.m0[0]) << ',' << format_double(r.m0[1]) << ','
        << format_double(r.m0[2]) << ',' << format_double(r.abs_error) << '\n';
  }
  if (!out) throw IoError(path.string() + ": write failed");
}

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const ScatterPlot& p) {
  constexpr double W = 640, H = 440, L = 80, R = 20, T = 40, B = 60;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < std::min(p.x.size(), p.y.size()); ++i) {
    const double x = p.log_x ? (p.x[i] > 0.0 ? std::log10(p.x[i]) : NAN) : p.x[i];
    if (std::isfinite(x) && std::isfinite(p.y[i])) {
      xs.push_back(x);
      ys.push_back(p.y[i]);
    }
  }
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!xs.empty()) {
    const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
    const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
    x0 = *xmin;
    x1 = *xmax;
    y0 = *ymin;
    y1 = *ymax;
  }
  if (p.zero_line) {
    y0 = std::min(y0, 0.0);
    y1 = std::max(y1, 0.0);
  }
  if (x1 - x0 <= 0) { x0 -= 0.5; x1 += 0.5; }
  if (y1 - y0 <= 0) { y0 -= 0.5; y1 += 0.5; }
  const double xpad = 0.03 * (x1 - x0), ypad = 0.05 * (y1 - y0);
  x0 -= xpad; x1 += xpad; y0 -= ypad; y1 += ypad;
  const auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  const auto sy = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(p.title)
    << "</text>\n";
  s << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4.0;
    const double yv = y0 + (y1 - y0) * i / 4.0;
    const std::string xl = p.log_x ? fmt("%.2g", std::pow(10.0, xv)) : fmt("%.3g", xv);
    s << "<text x=\"" << fmt("%.1f", sx(xv)) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << xl
      << "</text>\n";
    s << "<text x=\"" << L - 6 << "\" y=\"" << fmt("%.1f", sy(yv) + 4) << "\" text-anchor=\"end\">"
      << fmt("%.3g", yv) << "</text>\n";
  }
  s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 14 << "\" text-anchor=\"middle\">"
    << escape(p.x_label) << (p.log_x ? " (log scale)" : "") << "</text>\n";
  s << "<text transform=\"translate(18," << (T + H - B) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
    << escape(p.y_label) << "</text>\n";
  if (p.zero_line) {
    s << "<line x1=\"" << L << "\" x2=\"" << W - R << "\" y1=\"" << fmt("%.1f", sy(0)) << "\" y2=\""
      << fmt("%.1f", sy(0)) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  }
  s << "<g fill=\"steelblue\" fill-opacity=\"0.5\">\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    s << "<circle cx=\"" << fmt("%.1f", sx(xs[i])) << "\" cy=\"" << fmt("%.1f", sy(ys[i])) << "\" r=\"2\"/>\n";
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

}  // namespace sawb
