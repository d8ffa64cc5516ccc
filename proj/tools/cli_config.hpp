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

#ifndef SAWB_TOOLS_CLI_CONFIG_HPP_
#define SAWB_TOOLS_CLI_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sawb/experiment.hpp"

namespace sawb::cli {

// Run configuration shared by the subcommands. Values come from defaults,
// then an optional key=value file, then command-line flags.
struct RunConfig {
  std::size_t n = 48000;
  std::uint64_t seed = 1;
  std::filesystem::path out = "sawb_out";
  VesselParams vessel;
  bool noise = true;
  int threads = 0;
  std::optional<std::size_t> epochs;
  bool cross_validate = true;
  std::vector<std::string> cells;  // empty: all 21
  std::vector<std::string> stages = {"generate", "train", "evaluate", "analyze"};

  CampaignConfig campaign() const;
  std::vector<CellId> selected_cells() const;
  bool has_stage(const std::string& stage) const;
};

// Recognized keys: n, seed, out, threads, noise, epochs, cross_validate,
// cells, stages, and vessel.{length, breadth, draught, waterplane_coeff,
// block_coeff, displacement, gm_t}. Lists are comma-separated.
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// SAWB_THREADS, if set to a positive integer.
int default_threads();

std::vector<std::string> split_list(const std::string& text);

// "3dof:hs" -> "3dof_hs"
std::string cell_file_stem(const CellId& id);

}  // namespace sawb::cli

#endif  // SAWB_TOOLS_CLI_CONFIG_HPP_
