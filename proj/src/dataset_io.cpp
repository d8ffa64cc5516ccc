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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sawb/binary_io.hpp"
#include "sawb/common.hpp"
#include "sawb/experiment.hpp"
#include "sawb/manifest.hpp"

namespace sawb {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void Manifest::set(std::string key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

void Manifest::set(std::string key, double value) { set(std::move(key), format_double(value)); }

std::optional<std::string> Manifest::get(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string Manifest::require(std::string_view key) const {
  auto v = get(key);
  if (!v) throw IoError("manifest: missing key " + std::string(key));
  return *v;
}

std::string Manifest::to_text() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
  return out;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Manifest Manifest::parse(std::string_view text, const std::string& origin) {
  Manifest m;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    const std::string t = trim(line.substr(0, line.find('#')));
    if (!t.empty()) {
      const auto eq = t.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw IoError(origin + ":" + std::to_string(line_no) + ": expected key=value");
      }
      m.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return m;
}

Manifest Manifest::load(const std::filesystem::path& path) {
  const auto bytes = binary::read_file(path);
  return parse(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
               path.string());
}

void Manifest::save(const std::filesystem::path& path) const { binary::write_text(path, to_text()); }

void save_dataset(const Dataset& d, const std::filesystem::path& path) {
  binary::Writer out;
  out.magic("SAWD");
  out.u32(kDatasetFormatVersion);
  const CampaignConfig& c = d.config;
  out.u64(d.records.size());
  out.u64(c.seed);
  out.u32(static_cast<std::uint32_t>(c.k_max));
  out.u8(c.noise_enabled ? 1 : 0);
  out.f64(c.noise.heave_m);
  out.f64(c.noise.pitch_deg);
  out.f64(c.noise.roll_deg);
  const VesselParams& v = c.vessel;
  for (double x : {v.length, v.breadth, v.draught, v.waterplane_coeff, v.block_coeff, v.displacement, v.gm_t}) {
    out.f64(x);
  }
  for (const Record& r : d.records) {
    out.f64(r.scenario.sea.h_s);
    out.f64(r.scenario.sea.t_1);
    out.f64(r.scenario.sea.mu_h);
    out.f64(r.scenario.speed);
    out.u64(r.scenario.seed);
    out.f64s(r.m0);
    for (const TopComponents& t : r.top) {
      if (t.ordinates.size() != c.k_max || t.freqs.size() != c.k_max) {
        throw DomainError("save_dataset: record component count differs from k_max");
      }
      out.f64s(t.ordinates);
      out.f64s(t.freqs);
    }
  }
  binary::write_file(path, out.bytes());
}

Dataset load_dataset(const std::filesystem::path& path) {
  const auto bytes = binary::read_file(path);
  binary::Reader in(bytes, path.string());
  in.expect_magic("SAWD");
  const std::uint32_t version = in.u32();
  if (version != kDatasetFormatVersion) in.fail("unsupported dataset format version " + std::to_string(version));
  Dataset d;
  CampaignConfig& c = d.config;
  const std::uint64_t n = in.u64();
  c.n = n;
  c.seed = in.u64();
  c.k_max = in.u32();
  c.noise_enabled = in.u8() != 0;
  c.noise.heave_m = in.f64();
  c.noise.pitch_deg = in.f64();
  c.noise.roll_deg = in.f64();
  VesselParams& v = c.vessel;
  for (double* x : {&v.length, &v.breadth, &v.draught, &v.waterplane_coeff, &v.block_coeff, &v.displacement, &v.gm_t}) {
    *x = in.f64();
  }
  const std::size_t record_bytes = 8 * (5 + 3 + 3 * 2 * c.k_max);
  if (c.k_max == 0 || n > in.remaining() / record_bytes || in.remaining() != n * record_bytes) {
    in.fail("record section size does not match header");
  }
  d.records.resize(n);
  for (Record& r : d.records) {
    r.scenario.sea.h_s = in.f64();
    r.scenario.sea.t_1 = in.f64();
    r.scenario.sea.mu_h = in.f64();
    r.scenario.speed = in.f64();
    r.scenario.seed = in.u64();
    in.f64s(r.m0);
    for (TopComponents& t : r.top) {
      t.ordinates.resize(c.k_max);
      t.freqs.resize(c.k_max);
      in.f64s(t.ordinates);
      in.f64s(t.freqs);
    }
  }
  return d;
}

void write_dataset_csv(const Dataset& d, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  const std::size_t k = d.config.k_max;
  out << "index,h_s,t_1,mu_h,speed,seed,m0_heave,m0_pitch,m0_roll";
  for (Dof dof : kAllDofs) {
    for (std::size_t i = 0; i < k; ++i) out << ',' << dof_name(dof) << "_s" << i;
    for (std::size_t i = 0; i < k; ++i) out << ',' << dof_name(dof) << "_w" << i;
  }
  out << '\n';
  for (std::size_t r = 0; r < d.records.size(); ++r) {
    const Record& rec = d.records[r];
    out << r << ',' << format_double(rec.scenario.sea.h_s) << ',' << format_double(rec.scenario.sea.t_1) << ','
        << format_double(rec.scenario.sea.mu_h) << ',' << format_double(rec.scenario.speed) << ','
        << rec.scenario.seed;
    for (double m : rec.m0) out << ',' << format_double(m);
    for (const TopComponents& t : rec.top) {
      for (double x : t.ordinates) out << ',' << format_double(x);
      for (double x : t.freqs) out << ',' << format_double(x);
    }
    out << '\n';
  }
  if (!out) throw IoError(path.string() + ": write failed");
}

}  // namespace sawb
