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

#include "sawb/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>

#include "sawb/common.hpp"

namespace sawb {

FeatureVector Record::features(DofMask mask, std::size_t k) const {
  if (mask.count() == 0) throw DomainError("Record::features: empty DOF mask");
  FeatureVector f;
  f.mask = mask;
  f.k = k;
  f.speed = scenario.speed;
  for (Dof d : mask.dofs()) {
    const auto i = static_cast<std::size_t>(d);
    if (k > top[i].ordinates.size()) {
      throw DomainError("Record::features: k exceeds the stored component count");
    }
    const auto kk = static_cast<std::ptrdiff_t>(k);
    f.top[i].ordinates.assign(top[i].ordinates.begin(), top[i].ordinates.begin() + kk);
    f.top[i].freqs.assign(top[i].freqs.begin(), top[i].freqs.begin() + kk);
    f.m0[i] = m0[i];
  }
  return f;
}

double Record::target(Target t) const {
  switch (t) {
    case Target::hs: return scenario.sea.h_s;
    case Target::t1: return scenario.sea.t_1;
    case Target::mu: return scenario.sea.mu_h;
  }
  return 0.0;
}

Manifest CampaignConfig::manifest() const {
  Manifest m;
  m.set("code_version", std::string(kCodeVersion));
  m.set("dataset_format_version", std::to_string(kDatasetFormatVersion));
  m.set("n", std::to_string(n));
  m.set("seed", std::to_string(seed));
  m.set("k_max", std::to_string(k_max));
  m.set("noise_enabled", noise_enabled ? "1" : "0");
  m.set("noise.heave_m", noise.heave_m);
  m.set("noise.pitch_deg", noise.pitch_deg);
  m.set("noise.roll_deg", noise.roll_deg);
  m.set("vessel.length", vessel.length);
  m.set("vessel.breadth", vessel.breadth);
  m.set("vessel.draught", vessel.draught);
  m.set("vessel.waterplane_coeff", vessel.waterplane_coeff);
  m.set("vessel.block_coeff", vessel.block_coeff);
  m.set("vessel.displacement", vessel.displacement);
  m.set("vessel.gm_t", vessel.gm_t);
  // Derived constants, informational only.
  const FrequencyGrid g = FrequencyGrid::standard();
  m.set("grid.omega_min", g.omegas.front());
  m.set("grid.omega_max", g.omegas.back());
  m.set("grid.components", std::to_string(g.size()));
  m.set("grid.d_omega", g.d_omega.front());
  m.set("response.samples", std::to_string(kResponseSamples));
  m.set("response.duration_s", kResponseDuration);
  for (Dof d : kAllDofs) {
    const WelchPolicy p = welch_policy(d);
    const std::string key = "welch." + std::string(dof_name(d));
    m.set(key + ".segments", std::to_string(p.segments));
    m.set(key + ".segment_length", std::to_string(p.segment_length));
    m.set(key + ".hop", std::to_string(p.hop));
    m.set(key + ".overlap", p.overlap());
  }
  m.set("roll.aft_fraction", kRollAftFraction);
  try {
    const RollHull h = roll_hull(vessel);
    m.set("roll.fwd_breadth", h.fwd_breadth);
    m.set("roll.fwd_section_coeff", h.fwd_section_coeff);
    m.set("roll.natural_period_s", h.natural_period);
    m.set("roll.metacentric_radius", h.metacentric_radius);
  } catch (const DomainError&) {
    m.set("roll.fwd_breadth", "invalid");
  }
  return m;
}

CampaignConfig CampaignConfig::from_manifest(const Manifest& m) {
  const auto num = [&](std::string_view key) {
    const std::string v = m.require(key);
    try {
      std::size_t used = 0;
      const double d = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return d;
    } catch (const std::exception&) {
      throw IoError("manifest: bad numeric value for " + std::string(key) + ": " + v);
    }
  };
  const auto u64 = [&](std::string_view key) {
    const std::string v = m.require(key);
    try {
      std::size_t used = 0;
      const unsigned long long x = std::stoull(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return static_cast<std::uint64_t>(x);
    } catch (const std::exception&) {
      throw IoError("manifest: bad integer value for " + std::string(key) + ": " + v);
    }
  };
  CampaignConfig c;
  c.n = u64("n");
  c.seed = u64("seed");
  c.k_max = u64("k_max");
  c.noise_enabled = u64("noise_enabled") != 0;
  c.noise.heave_m = num("noise.heave_m");
  c.noise.pitch_deg = num("noise.pitch_deg");
  c.noise.roll_deg = num("noise.roll_deg");
  c.vessel.length = num("vessel.length");
  c.vessel.breadth = num("vessel.breadth");
  c.vessel.draught = num("vessel.draught");
  c.vessel.waterplane_coeff = num("vessel.waterplane_coeff");
  c.vessel.block_coeff = num("vessel.block_coeff");
  c.vessel.displacement = num("vessel.displacement");
  c.vessel.gm_t = num("vessel.gm_t");
  return c;
}

Scenario sample_scenario(std::uint64_t seed, std::size_t index) {
  using R = CampaignRanges;
  std::mt19937_64 rng(derive_seed(seed, 0x5c3e, index));
  std::uniform_real_distribution<double> h(R::h_s_min, R::h_s_max);
  std::uniform_real_distribution<double> t(R::t_1_min, R::t_1_max);
  std::uniform_real_distribution<double> mu(R::mu_min, R::mu_max);
  std::uniform_real_distribution<double> u(R::speed_min, R::speed_max);
  Scenario s;
  s.sea.h_s = h(rng);
  s.sea.t_1 = t(rng);
  s.sea.mu_h = mu(rng);
  s.speed = u(rng);
  s.seed = derive_seed(seed, 0x51a7, index);
  return s;
}

std::vector<Scenario> sample_scenarios(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("sample_scenarios: n must be at least 1");
  std::vector<Scenario> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = sample_scenario(seed, i);
  return out;
}

Record simulate_record(const CampaignConfig& config, const Scenario& scenario) {
  ResponseSet rs = simulate_response(config.vessel, scenario);
  if (config.noise_enabled) rs = add_sensor_noise(std::move(rs), scenario.seed, config.noise);
  Record r;
  r.scenario = scenario;
  for (Dof d : kAllDofs) {
    const auto i = static_cast<std::size_t>(d);
    const std::vector<double>& s = rs.series(d);
    for (double v : s) {
      if (!std::isfinite(v)) throw NumericError("non-finite response sample");
    }
    const Psd psd = welch_psd(s, kResponseDt, d);
    r.m0[i] = psd.m0;
    r.top[i] = top_components(psd, config.k_max);
  }
  return r;
}

Dataset generate_dataset(const CampaignConfig& config) {
  if (config.n == 0) throw DomainError("generate_dataset: n must be at least 1");
  config.vessel.validate();
  Dataset d;
  d.config = config;
  d.records.resize(config.n);
  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();
  const auto n = static_cast<std::ptrdiff_t>(config.n);
  std::ptrdiff_t failed = -1;
  std::string failure;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const Scenario s = sample_scenario(config.seed, static_cast<std::size_t>(i));
      d.records[static_cast<std::size_t>(i)] = simulate_record(config, s);
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(mu);
      if (failed < 0 || i < failed) {
        failed = i;
        failure = e.what();
      }
    }
  }
  if (failed >= 0) {
    throw NumericError("generate_dataset: scenario " + std::to_string(failed) + " failed: " + failure);
  }
  return d;
}

Record regenerate_record(const CampaignConfig& config, std::size_t index) {
  return simulate_record(config, sample_scenario(config.seed, index));
}

std::vector<std::size_t> Split::pool() const {
  std::vector<std::size_t> out;
  for (const auto& f : folds) out.insert(out.end(), f.begin(), f.end());
  return out;
}

std::vector<std::size_t> Split::train(std::size_t fold) const {
  if (fold >= kFolds) throw DomainError("Split::train: fold index out of range");
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < kFolds; ++f) {
    if (f != fold) out.insert(out.end(), folds[f].begin(), folds[f].end());
  }
  return out;
}

Split split_and_fold(std::size_t n, std::uint64_t seed) {
  if (n < 10) throw DomainError("split_and_fold: need at least 10 records");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  Split s;
  const std::size_t n_test = n / 10;
  s.test.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_test));
  const std::size_t pool = n - n_test;
  std::size_t pos = n_test;
  for (std::size_t f = 0; f < kFolds; ++f) {
    const std::size_t size = pool / kFolds + (f < pool % kFolds ? 1 : 0);
    s.folds[f].assign(idx.begin() + static_cast<std::ptrdiff_t>(pos),
                      idx.begin() + static_cast<std::ptrdiff_t>(pos + size));
    pos += size;
  }
  return s;
}

double rmse(std::span<const double> estimates, std::span<const double> truths) {
  if (estimates.empty() || estimates.size() != truths.size()) {
    throw DomainError("rmse: inputs must be non-empty and of equal length");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double d = truths[i] - estimates[i];
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(estimates.size()));
}

double r_squared(std::span<const double> estimates, std::span<const double> truths) {
  if (estimates.size() < 2 || estimates.size() != truths.size()) {
    throw DomainError("r_squared: need at least two paired values");
  }
  const double mean = std::accumulate(truths.begin(), truths.end(), 0.0) / static_cast<double>(truths.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    ss_res += (truths[i] - estimates[i]) * (truths[i] - estimates[i]);
    ss_tot += (truths[i] - mean) * (truths[i] - mean);
  }
  if (!(ss_tot > 0.0)) throw DomainError("r_squared: truths are all identical");
  return 1.0 - ss_res / ss_tot;
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t q = i; q <= j; ++q) ranks[idx[q]] = r;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  const auto n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) throw DomainError("correlation: constant input");
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || a.size() != b.size()) throw DomainError("spearman: need at least two paired values");
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  return pearson(ra, rb);
}

std::string CellId::name() const { return mask.name() + ":" + std::string(target_name(target)); }

std::optional<CellId> CellId::parse(const std::string& name) {
  const auto colon = name.find(':');
  if (colon == std::string::npos) return std::nullopt;
  const auto mask = DofMask::parse(name.substr(0, colon));
  const auto target = parse_target(name.substr(colon + 1));
  if (!mask || !target) return std::nullopt;
  return CellId{*mask, *target};
}

std::vector<CellId> all_cells() {
  std::vector<CellId> cells;
  for (const DofMask& m : study_masks()) {
    for (Target t : kAllTargets) cells.push_back({m, t});
  }
  return cells;
}

Matrix feature_matrix(const Dataset& d, std::span<const std::size_t> rows, DofMask mask, std::size_t k) {
  Matrix x(rows.size(), feature_width(mask, k));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::vector<double> f = d.records.at(rows[r]).features(mask, k).flatten();
    std::copy(f.begin(), f.end(), x.row(r).begin());
  }
  return x;
}

std::vector<double> target_vector(const Dataset& d, std::span<const std::size_t> rows, Target t) {
  std::vector<double> y(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) y[r] = d.records.at(rows[r]).target(t);
  return y;
}

void CellResult::summarize_folds() {
  if (folds.empty()) return;
  const auto n = static_cast<double>(folds.size());
  rmse_mean = r2_mean = 0.0;
  for (const auto& f : folds) {
    rmse_mean += f.rmse;
    r2_mean += f.r2;
  }
  rmse_mean /= n;
  r2_mean /= n;
  double var = 0.0;
  for (const auto& f : folds) var += (f.rmse - rmse_mean) * (f.rmse - rmse_mean);
  rmse_std = std::sqrt(var / n);
}

const CellResult* EvalReport::find(const CellId& id) const {
  for (const auto& c : cells) {
    if (c.cell == id) return &c;
  }
  return nullptr;
}

std::uint64_t split_seed(std::uint64_t master_seed) { return derive_seed(master_seed, 0x5917); }

std::uint64_t cell_seed(std::uint64_t master_seed, const CellId& cell, std::size_t fold) {
  return derive_seed(master_seed, 0xce11, cell.mask.bits(), static_cast<std::uint64_t>(cell.target), fold);
}

CellResult evaluate_model(const NetworkWeights& w, const Dataset& d, const Split& split) {
  CellResult r;
  r.cell = {w.spec.mask, w.spec.target};
  const Matrix x = feature_matrix(d, split.test, w.spec.mask, w.spec.k);
  const std::vector<double> y = target_vector(d, split.test, w.spec.target);
  const std::vector<double> est = predict(w, x);
  r.test_rmse = rmse(est, y);
  r.test_r2 = r_squared(est, y);
  r.test_predictions.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) r.test_predictions[i] = {split.test[i], y[i], est[i]};
  return r;
}

namespace {

struct TrainingTask {
  std::size_t cell;
  std::size_t fold;  // kFolds marks the final whole-pool model
};

}  // namespace

EvalReport component_study(const Dataset& d, const Split& split, std::span<const CellId> cells,
                           const StudyOptions& options) {
  std::vector<TrainingTask> tasks;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (options.cross_validate) {
      for (std::size_t f = 0; f < kFolds; ++f) tasks.push_back({c, f});
    }
    tasks.push_back({c, kFolds});
  }
  std::vector<std::optional<NetworkWeights>> finals(cells.size());
  std::vector<std::vector<FoldMetrics>> folds(cells.size(), std::vector<FoldMetrics>(kFolds));
  TrainOptions topt;
  topt.epochs = options.epochs;

  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
  const auto nt = static_cast<std::ptrdiff_t>(tasks.size());
  std::exception_ptr error;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t t = 0; t < nt; ++t) {
    try {
      const TrainingTask task = tasks[static_cast<std::size_t>(t)];
      const CellId& cell = cells[task.cell];
      const NetworkSpec spec = NetworkSpec::standard(cell.mask, cell.target);
      const std::uint64_t seed = cell_seed(options.master_seed, cell, task.fold);
      if (task.fold == kFolds) {
        const std::vector<std::size_t> pool = split.pool();
        const Matrix x = feature_matrix(d, pool, spec.mask, spec.k);
        const std::vector<double> y = target_vector(d, pool, spec.target);
        TrainResult tr = train(spec, x, y, Matrix(0, x.cols), {}, seed, topt);
        finals[task.cell] = std::move(tr.weights);
      } else {
        const std::vector<std::size_t> tr_rows = split.train(task.fold);
        const std::vector<std::size_t>& va_rows = split.validation(task.fold);
        const Matrix xt = feature_matrix(d, tr_rows, spec.mask, spec.k);
        const Matrix xv = feature_matrix(d, va_rows, spec.mask, spec.k);
        const std::vector<double> yt = target_vector(d, tr_rows, spec.target);
        const std::vector<double> yv = target_vector(d, va_rows, spec.target);
        TrainResult tr = train(spec, xt, yt, xv, yv, seed, topt);
        const std::vector<double> est = predict(tr.weights, xv);
        folds[task.cell][task.fold] = {task.fold, rmse(est, yv), r_squared(est, yv)};
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  EvalReport report;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellResult r = evaluate_model(*finals[c], d, split);
    if (options.cross_validate) {
      r.folds = folds[c];
      r.summarize_folds();
    }
    r.model = std::move(finals[c]);
    report.cells.push_back(std::move(r));
  }
  return report;
}

double PowerErrorTable::spearman(Dof dof) const {
  std::vector<double> m(rows.size()), e(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    m[i] = rows[i].m0[static_cast<std::size_t>(dof)];
    e[i] = rows[i].abs_error;
  }
  return sawb::spearman(m, e);
}

PowerErrorTable power_error_analysis(const CellResult& result, const Dataset& d) {
  PowerErrorTable t;
  t.cell = result.cell;
  t.rows.reserve(result.test_predictions.size());
  for (const Prediction& p : result.test_predictions) {
    PowerErrorRow row;
    row.index = p.index;
    row.m0 = d.records.at(p.index).m0;
    row.abs_error = std::abs(p.residual());
    t.rows.push_back(row);
  }
  return t;
}

}  // namespace sawb
