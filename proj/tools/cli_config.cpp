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

#include "cli_config.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "sawb/common.hpp"
#include "sawb/manifest.hpp"

namespace sawb::cli {
namespace {

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    if (!v.empty() && v.front() == '-') throw std::invalid_argument(v);
    const unsigned long long x = std::stoull(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw DomainError("config: " + key + " expects a non-negative integer, got \"" + v + "\"");
}

double parse_f64(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw DomainError("config: " + key + " expects a number, got \"" + v + "\"");
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw DomainError("config: " + key + " expects true or false, got \"" + v + "\"");
}

}  // namespace

CampaignConfig RunConfig::campaign() const {
  CampaignConfig c;
  c.n = n;
  c.seed = seed;
  c.vessel = vessel;
  c.noise_enabled = noise;
  c.threads = threads;
  return c;
}

std::vector<CellId> RunConfig::selected_cells() const {
  if (cells.empty() || (cells.size() == 1 && cells[0] == "all")) return all_cells();
  std::vector<CellId> out;
  for (const std::string& name : cells) {
    const auto id = CellId::parse(name);
    if (!id) throw DomainError("unknown cell \"" + name + "\" (expected e.g. 3dof:hs or heave+pitch:mu)");
    if (std::find(out.begin(), out.end(), *id) == out.end()) out.push_back(*id);
  }
  return out;
}

bool RunConfig::has_stage(const std::string& stage) const {
  return std::find(stages.begin(), stages.end(), stage) != stages.end();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ' && c != '\t') {
      cur += c;
    }
  }
  return out;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "n") {
    cfg.n = parse_u64(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_u64(key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "threads") {
    cfg.threads = static_cast<int>(parse_u64(key, value));
  } else if (key == "noise") {
    cfg.noise = parse_bool(key, value);
  } else if (key == "epochs") {
    cfg.epochs = parse_u64(key, value);
  } else if (key == "cross_validate") {
    cfg.cross_validate = parse_bool(key, value);
  } else if (key == "cells") {
    cfg.cells = split_list(value);
  } else if (key == "stages") {
    cfg.stages = split_list(value);
  } else if (key == "vessel.length") {
    cfg.vessel.length = parse_f64(key, value);
  } else if (key == "vessel.breadth") {
    cfg.vessel.breadth = parse_f64(key, value);
  } else if (key == "vessel.draught") {
    cfg.vessel.draught = parse_f64(key, value);
  } else if (key == "vessel.waterplane_coeff") {
    cfg.vessel.waterplane_coeff = parse_f64(key, value);
  } else if (key == "vessel.block_coeff") {
    cfg.vessel.block_coeff = parse_f64(key, value);
  } else if (key == "vessel.displacement") {
    cfg.vessel.displacement = parse_f64(key, value);
  } else if (key == "vessel.gm_t") {
    cfg.vessel.gm_t = parse_f64(key, value);
  } else {
    throw DomainError("config: unknown key \"" + key + "\"");
  }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  const Manifest m = Manifest::load(path);
  for (const auto& [key, value] : m.entries()) {
    try {
      apply_setting(cfg, key, value);
    } catch (const DomainError& e) {
      throw DomainError(path.string() + ": " + e.what());
    }
  }
}

int default_threads() {
  const char* env = std::getenv("SAWB_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v <= 0) return 0;
  return static_cast<int>(v);
}

std::string cell_file_stem(const CellId& id) {
  std::string s = id.name();
  std::replace(s.begin(), s.end(), ':', '_');
  return s;
}

}  // namespace sawb::cli
