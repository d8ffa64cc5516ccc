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

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cli_config.hpp"
#include "sawb/binary_io.hpp"
#include "sawb/common.hpp"
#include "sawb/experiment.hpp"
#include "sawb/manifest.hpp"
#include "sawb/report.hpp"

namespace fs = std::filesystem;
using namespace sawb;
using sawb::cli::RunConfig;

namespace {

constexpr const char* kManifestName = "manifest.txt";
constexpr const char* kDatasetName = "dataset.bin";
constexpr const char* kFoldMetricsName = "fold_metrics.csv";
constexpr const char* kMetricsName = "metrics.csv";
constexpr const char* kPredictionsName = "predictions.csv";
constexpr const char* kModelExt = ".model";

// Flags shared by every subcommand; applied over the config file.
struct Overrides {
  std::string config;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> threads;
  std::optional<std::size_t> epochs;
  std::vector<std::string> cells;
  std::vector<std::string> settings;
  bool no_noise = false;
  bool no_cv = false;
};

RunConfig resolve(const Overrides& o) {
  RunConfig cfg;
  cfg.threads = cli::default_threads();
  if (!o.config.empty()) cli::apply_config_file(cfg, o.config);
  for (const std::string& s : o.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw DomainError("--set expects key=value, got \"" + s + "\"");
    cli::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  if (o.n) cfg.n = *o.n;
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.out = *o.out;
  if (o.threads) cfg.threads = *o.threads;
  if (o.epochs) cfg.epochs = *o.epochs;
  if (!o.cells.empty()) cfg.cells = o.cells;
  if (o.no_noise) cfg.noise = false;
  if (o.no_cv) cfg.cross_validate = false;
  if (cfg.threads < 0) throw DomainError("threads must be non-negative");
  if (cfg.epochs && *cfg.epochs == 0) throw DomainError("epochs must be positive");
  cfg.selected_cells();
  return cfg;
}

void log(const std::string& msg) { std::cerr << "sawb: " << msg << '\n'; }

std::string join_cells(const std::vector<CellId>& cells) {
  std::string s;
  for (const CellId& c : cells) s += (s.empty() ? "" : ",") + c.name();
  return s;
}

// --- generate ---------------------------------------------------------

fs::path run_generate(const RunConfig& cfg, const fs::path& out, bool csv) {
  if (cfg.n < 1) throw DomainError("n must be at least 1");
  CampaignConfig campaign = cfg.campaign();
  campaign.vessel.validate();
  fs::create_directories(out);
  log("simulating " + std::to_string(cfg.n) + " scenarios");
  const Dataset d = generate_dataset(campaign);
  const fs::path data = out / kDatasetName;
  save_dataset(d, data);
  if (csv) write_dataset_csv(d, out / "dataset.csv");
  Manifest m = campaign.manifest();
  m.set("stage", "generate");
  m.set("dataset_file", kDatasetName);
  m.save(out / kManifestName);
  log("wrote " + data.string());
  return data;
}

// --- train ------------------------------------------------------------

void run_train(const RunConfig& cfg, const fs::path& data, const fs::path& out) {
  const Dataset d = load_dataset(data);
  const std::vector<CellId> cells = cfg.selected_cells();
  const Split split = split_and_fold(d.size(), split_seed(cfg.seed));
  StudyOptions opts;
  opts.master_seed = cfg.seed;
  opts.epochs = cfg.epochs;
  opts.threads = cfg.threads;
  opts.cross_validate = cfg.cross_validate;
  log("training " + std::to_string(cells.size()) + " cell(s) on " + std::to_string(d.size()) +
      " records");
  const EvalReport report = component_study(d, split, cells, opts);

  fs::create_directories(out);
  std::vector<MetricRow> rows;
  for (const CellResult& r : report.cells) {
    save_weights(*r.model, out / (cli::cell_file_stem(r.cell) + kModelExt));
    const auto cell_rows = metric_rows(r, true);
    rows.insert(rows.end(), cell_rows.begin(), cell_rows.end());
    std::printf("%-16s cv_rmse %.6g  test_rmse %.6g %s\n", r.cell.name().c_str(), r.rmse_mean, r.test_rmse,
                std::string(target_unit(r.cell.target)).c_str());
  }
  write_metrics_csv(rows, out / kFoldMetricsName);

  Manifest m = d.config.manifest();
  m.set("stage", "train");
  m.set("dataset_file", data.filename().string());
  m.set("model_format_version", std::to_string(kModelFormatVersion));
  m.set("master_seed", std::to_string(cfg.seed));
  m.set("split_seed", std::to_string(split_seed(cfg.seed)));
  m.set("test_size", std::to_string(split.test.size()));
  m.set("folds", std::to_string(kFolds));
  m.set("cross_validate", cfg.cross_validate ? "1" : "0");
  m.set("epochs", cfg.epochs ? std::to_string(*cfg.epochs) : "configured");
  m.set("cells", join_cells(cells));
  m.save(out / kManifestName);
}

// --- evaluate ---------------------------------------------------------

std::uint64_t master_seed_for(const fs::path& models, std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  const fs::path mpath = models / kManifestName;
  if (fs::exists(mpath)) {
    const auto v = Manifest::load(mpath).get("master_seed");
    if (v) return std::stoull(*v);
  }
  return 1;
}

void run_evaluate(const fs::path& data, const fs::path& models, const fs::path& out, std::uint64_t seed) {
  const Dataset d = load_dataset(data);
  const Split split = split_and_fold(d.size(), split_seed(seed));

  std::vector<fs::path> files;
  if (!fs::is_directory(models)) throw IoError(models.string() + ": not a directory");
  for (const auto& e : fs::directory_iterator(models)) {
    if (e.is_regular_file() && e.path().extension() == kModelExt) files.push_back(e.path());
  }
  if (files.empty()) throw IoError(models.string() + ": no model files");
  std::sort(files.begin(), files.end());

  std::vector<MetricRow> fold_rows;
  if (fs::exists(models / kFoldMetricsName)) fold_rows = read_metrics_csv(models / kFoldMetricsName);

  EvalReport report;
  for (const fs::path& f : files) {
    const NetworkWeights w = load_weights(f);
    if (w.spec.input_width() > feature_width(w.spec.mask, d.config.k_max)) {
      throw DomainError(f.string() + ": model needs more spectral components than the dataset holds");
    }
    report.cells.push_back(evaluate_model(w, d, split));
  }
  std::vector<MetricRow> rows;
  for (const CellResult& r : report.cells) {
    const std::string name = r.cell.name();
    for (const MetricRow& fr : fold_rows) {
      if (fr.cell == name && fr.fold != "test") rows.push_back(fr);
    }
    rows.push_back({name, "test", r.test_rmse, r.test_r2});
    std::printf("%-16s test_rmse %.6g %s  r2 %.4f\n", name.c_str(), r.test_rmse,
                std::string(target_unit(r.cell.target)).c_str(), r.test_r2);
  }
  fs::create_directories(out);
  write_metrics_csv(rows, out / kMetricsName);
  write_predictions_csv(report, out / kPredictionsName);

  Manifest m = d.config.manifest();
  m.set("stage", "evaluate");
  m.set("dataset_file", data.filename().string());
  m.set("master_seed", std::to_string(seed));
  m.set("split_seed", std::to_string(split_seed(seed)));
  m.set("test_size", std::to_string(split.test.size()));
  m.set("models", std::to_string(files.size()));
  m.save(out / kManifestName);
}

// --- analyze ----------------------------------------------------------

void run_analyze(const fs::path& report_dir, const fs::path& data, const fs::path& out) {
  const Dataset d = load_dataset(data);
  const EvalReport report = read_predictions_csv(report_dir / kPredictionsName);
  fs::create_directories(out);

  std::string spearman_csv = "cell,dof,spearman\n";
  for (const CellResult& r : report.cells) {
    for (const Prediction& p : r.test_predictions) {
      if (p.index >= d.size()) throw IoError("predictions refer to record " + std::to_string(p.index) +
                                             " beyond the dataset");
    }
    const std::string stem = cli::cell_file_stem(r.cell);
    const std::string target(target_name(r.cell.target));
    const std::string unit(target_unit(r.cell.target));

    write_residuals_csv(r, out / ("residuals_" + stem + ".csv"));
    ScatterPlot res;
    res.title = r.cell.name() + " residuals";
    res.x_label = "estimated " + target + " (" + unit + ")";
    res.y_label = "residual (" + unit + ")";
    res.zero_line = true;
    for (const Prediction& p : r.test_predictions) {
      res.x.push_back(p.estimate);
      res.y.push_back(p.residual());
    }
    binary::write_text(out / ("residuals_" + stem + ".svg"), render_svg(res));

    const PowerErrorTable t = power_error_analysis(r, d);
    write_power_error_csv(t, out / ("power_error_" + stem + ".csv"));
    for (Dof dof : r.cell.mask.dofs()) {
      const std::string dn(dof_name(dof));
      ScatterPlot pe;
      pe.title = r.cell.name() + ": " + dn + " response power vs absolute error";
      pe.x_label = dn + " m0" + (dof == Dof::heave ? " (m^2)" : " (rad^2)");
      pe.y_label = "absolute " + target + " error (" + unit + ")";
      pe.log_x = true;
      for (const PowerErrorRow& row : t.rows) {
        pe.x.push_back(row.m0[static_cast<std::size_t>(dof)]);
        pe.y.push_back(row.abs_error);
      }
      binary::write_text(out / ("power_error_" + stem + "_" + dn + ".svg"), render_svg(pe));
      spearman_csv += r.cell.name() + "," + dn + "," + format_double(t.spearman(dof)) + "\n";
    }
  }
  binary::write_text(out / "spearman.csv", spearman_csv);
}

int run(int argc, char** argv) {
  CLI::App app{"sawb: sea-state estimation from vessel motion spectra"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kCodeVersion));

  Overrides o;
  const auto common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "key=value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--set", o.settings, "override one configuration key (key=value)");
    sub->add_option("--threads", o.threads, "worker threads (default: SAWB_THREADS or all cores)");
  };
  const auto training = [&o](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "master seed for splits and training");
    sub->add_option("--epochs", o.epochs, "override the configured epoch count");
    sub->add_option("--cell", o.cells, "cell to train, e.g. 3dof:hs (repeatable; default all 21)");
    sub->add_flag("--no-cv", o.no_cv, "skip cross-validation and train only the final model");
  };

  bool csv = false;
  CLI::App* gen = app.add_subcommand("generate", "simulate a dataset");
  common(gen);
  gen->add_option("--n", o.n, "number of scenarios");
  gen->add_option("--seed", o.seed, "campaign seed");
  gen->add_option("--out", o.out, "output directory");
  gen->add_flag("--csv", csv, "also write dataset.csv");
  gen->add_flag("--no-noise", o.no_noise, "disable sensor noise");

  std::string data_path;
  std::string models_path;
  std::string report_path;
  CLI::App* tr = app.add_subcommand("train", "train and cross-validate networks");
  common(tr);
  training(tr);
  tr->add_option("--data", data_path, "dataset file")->required();
  tr->add_option("--out", o.out, "model directory (default: models/ next to the dataset)");

  CLI::App* ev = app.add_subcommand("evaluate", "score stored models on the test split");
  common(ev);
  ev->add_option("--data", data_path, "dataset file")->required();
  ev->add_option("--models", models_path, "model directory")->required();
  ev->add_option("--out", o.out, "report directory")->required();
  ev->add_option("--seed", o.seed, "master seed (default: from the model manifest)");

  CLI::App* an = app.add_subcommand("analyze", "residual and power-error tables and plots");
  common(an);
  an->add_option("--report", report_path, "report directory from evaluate")->required();
  an->add_option("--data", data_path, "dataset file")->required();
  an->add_option("--out", o.out, "output directory (default: the report directory)");

  CLI::App* rep = app.add_subcommand("reproduce", "run every stage at the configured scale");
  common(rep);
  training(rep);
  rep->add_option("--n", o.n, "number of scenarios");
  rep->add_option("--out", o.out, "output directory");
  rep->add_flag("--no-noise", o.no_noise, "disable sensor noise");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "sawb: " << e.what() << "\nRun with --help for usage.\n";
    return 1;
  }

  const RunConfig cfg = resolve(o);
  if (*gen) {
    run_generate(cfg, cfg.out, csv);
  } else if (*tr) {
    const fs::path data = data_path;
    const fs::path out = o.out ? fs::path(*o.out) : data.parent_path() / "models";
    run_train(cfg, data, out);
  } else if (*ev) {
    const fs::path models = models_path;
    run_evaluate(data_path, models, cfg.out, master_seed_for(models, o.seed));
  } else if (*an) {
    run_analyze(report_path, data_path, o.out ? fs::path(*o.out) : fs::path(report_path));
  } else if (*rep) {
    const fs::path root = cfg.out;
    for (const std::string& s : cfg.stages) {
      if (s != "generate" && s != "train" && s != "evaluate" && s != "analyze") {
        throw DomainError("unknown stage \"" + s + "\"");
      }
    }
    const fs::path data = root / "data" / kDatasetName;
    if (cfg.has_stage("generate")) run_generate(cfg, root / "data", false);
    if (cfg.has_stage("train")) run_train(cfg, data, root / "models");
    if (cfg.has_stage("evaluate")) run_evaluate(data, root / "models", root / "report", cfg.seed);
    if (cfg.has_stage("analyze")) run_analyze(root / "report", data, root / "report");
    Manifest m = cfg.campaign().manifest();
    m.set("stage", "reproduce");
    m.set("model_format_version", std::to_string(kModelFormatVersion));
    m.set("master_seed", std::to_string(cfg.seed));
    m.set("stages", [&] {
      std::string s;
      for (const std::string& st : cfg.stages) s += (s.empty() ? "" : ",") + st;
      return s;
    }());
    m.set("cells", join_cells(cfg.selected_cells()));
    m.save(root / kManifestName);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const DomainError& e) {
    std::cerr << "sawb: error: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    std::cerr << "sawb: I/O error: " << e.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "sawb: I/O error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "sawb: numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "sawb: error: " << e.what() << '\n';
    return 1;
  }
}
