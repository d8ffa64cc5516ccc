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

#ifndef SAWB_EXPERIMENT_HPP_
#define SAWB_EXPERIMENT_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sawb/manifest.hpp"
#include "sawb/neural.hpp"
#include "sawb/simulate.hpp"
#include "sawb/spectral.hpp"
#include "sawb/vessel.hpp"

namespace sawb {

inline constexpr std::string_view kCodeVersion = "sawb 1.0.0";

// One simulated scenario reduced to spectral features. `top` holds the
// k_max strongest ordinates per DOF; any smaller K is its prefix.
struct Record {
  Scenario scenario;
  std::array<double, 3> m0{};
  std::array<TopComponents, 3> top;

  FeatureVector features(DofMask mask, std::size_t k) const;
  double target(Target t) const;
};

struct CampaignConfig {
  std::size_t n = 48000;
  std::uint64_t seed = 1;
  VesselParams vessel;
  SensorNoise noise;
  bool noise_enabled = true;
  std::size_t k_max = 80;
  int threads = 0;  // 0: OpenMP default

  Manifest manifest() const;
  static CampaignConfig from_manifest(const Manifest& m);
};

struct Dataset {
  CampaignConfig config;
  std::vector<Record> records;

  std::size_t size() const { return records.size(); }
};

// Uniform draws over the campaign ranges; scenario i depends only on
// (seed, i).
std::vector<Scenario> sample_scenarios(std::size_t n, std::uint64_t seed);
Scenario sample_scenario(std::uint64_t seed, std::size_t index);

// Spectrum, realization, responses, optional noise, Welch PSDs, features.
Record simulate_record(const CampaignConfig& config, const Scenario& scenario);

// Scenarios are simulated in parallel; the result is independent of the
// thread count. A failing scenario aborts the run with its index.
Dataset generate_dataset(const CampaignConfig& config);

// Rebuilds record `index` from the configuration alone.
Record regenerate_record(const CampaignConfig& config, std::size_t index);

// Dataset file: "SAWD" magic, version, configuration, then fixed-size
// little-endian records.
inline constexpr std::uint32_t kDatasetFormatVersion = 1;
void save_dataset(const Dataset& d, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);
void write_dataset_csv(const Dataset& d, const std::filesystem::path& path);

inline constexpr std::size_t kFolds = 5;

// Held-out test indices plus a 5-way partition of the remaining pool.
struct Split {
  std::vector<std::size_t> test;
  std::array<std::vector<std::size_t>, kFolds> folds;

  std::vector<std::size_t> pool() const;
  std::vector<std::size_t> train(std::size_t fold) const;
  const std::vector<std::size_t>& validation(std::size_t fold) const { return folds.at(fold); }
};

// Test split floor(N / 10); fold sizes differ by at most one, larger folds
// first. Membership is a seeded shuffle.
Split split_and_fold(std::size_t n, std::uint64_t seed);

double rmse(std::span<const double> estimates, std::span<const double> truths);
// 1 - SS_res / SS_tot
double r_squared(std::span<const double> estimates, std::span<const double> truths);
// Rank correlation with average ranks for ties.
double spearman(std::span<const double> a, std::span<const double> b);

struct CellId {
  DofMask mask;
  Target target = Target::hs;

  std::string name() const;  // e.g. "3dof:hs", "heave+pitch:mu"
  static std::optional<CellId> parse(const std::string& name);
  bool operator==(const CellId&) const = default;
};

// The 21 (mask, target) cells, masks outer.
std::vector<CellId> all_cells();

Matrix feature_matrix(const Dataset& d, std::span<const std::size_t> rows, DofMask mask,
                      std::size_t k);
std::vector<double> target_vector(const Dataset& d, std::span<const std::size_t> rows, Target t);

struct FoldMetrics {
  std::size_t fold = 0;
  double rmse = 0.0;
  double r2 = 0.0;
};

struct Prediction {
  std::size_t index = 0;  // dataset row
  double truth = 0.0;
  double estimate = 0.0;
  double residual() const { return estimate - truth; }
};

struct CellResult {
  CellId cell;
  std::vector<FoldMetrics> folds;
  double rmse_mean = 0.0;
  double rmse_std = 0.0;
  double r2_mean = 0.0;
  double test_rmse = 0.0;
  double test_r2 = 0.0;
  std::vector<Prediction> test_predictions;
  std::optional<NetworkWeights> model;  // trained on the whole pool

  void summarize_folds();
};

struct EvalReport {
  std::vector<CellResult> cells;
  const CellResult* find(const CellId& id) const;
};

struct StudyOptions {
  std::uint64_t master_seed = 1;
  std::optional<std::size_t> epochs;  // overrides the configured 100
  int threads = 0;
  bool cross_validate = true;
};

std::uint64_t split_seed(std::uint64_t master_seed);
std::uint64_t cell_seed(std::uint64_t master_seed, const CellId& cell, std::size_t fold);

// Five-fold cross-validation per cell plus a final model trained on the
// whole pool and scored on the test split. Training runs are distributed
// over threads; results are merged in cell order.
EvalReport component_study(const Dataset& d, const Split& split, std::span<const CellId> cells,
                           const StudyOptions& options);

// Scores a stored model on the test split.
CellResult evaluate_model(const NetworkWeights& w, const Dataset& d, const Split& split);

struct PowerErrorRow {
  std::size_t index = 0;
  std::array<double, 3> m0{};
  double abs_error = 0.0;
};

struct PowerErrorTable {
  CellId cell;
  std::vector<PowerErrorRow> rows;

  double spearman(Dof dof) const;
};

// Response m0 per DOF against absolute test-split error.
PowerErrorTable power_error_analysis(const CellResult& result, const Dataset& d);

}  // namespace sawb

#endif  // SAWB_EXPERIMENT_HPP_
