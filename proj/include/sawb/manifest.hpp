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

#ifndef SAWB_MANIFEST_HPP_
#define SAWB_MANIFEST_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sawb {

// Ordered key=value text, one entry per line; '#' starts a comment.
class Manifest {
 public:
  void set(std::string key, std::string value);
  void set(std::string key, double value);
  std::optional<std::string> get(std::string_view key) const;
  std::string require(std::string_view key) const;  // IoError if absent
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  std::string to_text() const;
  static Manifest parse(std::string_view text, const std::string& origin);
  static Manifest load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Shortest text that reads back to the same double.
std::string format_double(double v);

}  // namespace sawb

#endif  // SAWB_MANIFEST_HPP_
