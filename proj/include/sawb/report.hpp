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

#ifndef SAWB_REPORT_HPP_
#define SAWB_REPORT_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sawb/experiment.hpp"

// Text serialization of evaluation results. Column layouts:
//
//   metrics.csv       cell,fold,rmse,r2       fold is 0-4, mean, std or test
//   predictions.csv   cell,index,truth,estimate,residual
//   residuals_<cell>.csv      estimate,residual
//   power_error_<cell>.csv    index,m0_heave,m0_pitch,m0_roll,abs_error
//   spearman.csv      cell,dof,spearman
namespace sawb {

struct MetricRow {
  std::string cell;
  std::string fold;
  double rmse = 0.0;
  double r2 = 0.0;
};

std::vector<MetricRow> metric_rows(const CellResult& r, bool include_test);
void write_metrics_csv(std::span<const MetricRow> rows, const std::filesystem::path& path);
std::vector<MetricRow> read_metrics_csv(const std::filesystem::path& path);

void write_predictions_csv(const EvalReport& report, const std::filesystem::path& path);
// Groups rows by cell, in file order; recomputes test RMSE and R^2.
EvalReport read_predictions_csv(const std::filesystem::path& path);

void write_residuals_csv(const CellResult& r, const std::filesystem::path& path);
void write_power_error_csv(const PowerErrorTable& t, const std::filesystem::path& path);

struct ScatterPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<double> y;
  bool log_x = false;
  bool zero_line = false;
};

// Self-contained SVG scatter plot with axes and tick labels.
std::string render_svg(const ScatterPlot& plot);

}  // namespace sawb

#endif  // SAWB_REPORT_HPP_
