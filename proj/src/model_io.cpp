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

#include <fstream>
#include <iterator>

#include "sawb/binary_io.hpp"
#include "sawb/neural.hpp"

namespace sawb {

namespace binary {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(path.string() + ": read failed");
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError(path.string() + ": write failed");
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  write_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

}  // namespace binary

std::vector<std::uint8_t> encode_weights(const NetworkWeights& w) {
  w.validate();
  binary::Writer out;
  out.magic("SAWB");
  out.u32(kModelFormatVersion);
  const NetworkSpec& s = w.spec;
  out.u8(s.mask.bits());
  out.u8(static_cast<std::uint8_t>(s.target));
  out.u32(static_cast<std::uint32_t>(s.k));
  out.u32(static_cast<std::uint32_t>(s.branch_nodes));
  out.u32(static_cast<std::uint32_t>(s.trunk_layers.size()));
  for (std::size_t n : s.trunk_layers) out.u32(static_cast<std::uint32_t>(n));
  out.u32(static_cast<std::uint32_t>(s.batch_size));
  out.u32(static_cast<std::uint32_t>(s.epochs));
  out.f64(s.learning_rate);

  out.u32(static_cast<std::uint32_t>(w.scaling.feature_mean.size()));
  out.f64s(w.scaling.feature_mean);
  out.f64s(w.scaling.feature_scale);
  out.f64(w.scaling.target_mean);
  out.f64(w.scaling.target_scale);

  out.u64(w.meta.seed);
  out.u64(w.meta.epochs_run);
  out.f64(w.meta.final_loss);

  out.u32(static_cast<std::uint32_t>(w.layers.size()));
  for (const LayerShape& l : w.layers) {
    out.u32(static_cast<std::uint32_t>(l.out));
    out.u32(static_cast<std::uint32_t>(l.in));
    out.f64s(std::span<const double>(w.params).subspan(l.weights(), l.in * l.out + l.out));
  }
  return out.take();
}

NetworkWeights decode_weights(std::span<const std::uint8_t> bytes, const std::string& origin) {
  binary::Reader in(bytes, origin);
  in.expect_magic("SAWB");
  const std::uint32_t version = in.u32();
  if (version != kModelFormatVersion) {
    in.fail("unsupported model format version " + std::to_string(version));
  }
  NetworkWeights w;
  NetworkSpec& s = w.spec;
  s.mask = DofMask(in.u8());
  const std::uint8_t target = in.u8();
  if (target > 2 || s.mask.count() == 0) in.fail("invalid network mask or target");
  s.target = static_cast<Target>(target);
  s.k = in.u32();
  s.branch_nodes = in.u32();
  const std::uint32_t trunk = in.u32();
  if (trunk > 64) in.fail("implausible trunk depth");
  s.trunk_layers.resize(trunk);
  for (auto& n : s.trunk_layers) n = in.u32();
  s.batch_size = in.u32();
  s.epochs = in.u32();
  s.learning_rate = in.f64();

  const std::uint32_t width = in.u32();
  if (width > in.remaining() / 16) in.fail("implausible scaling width");
  w.scaling.feature_mean.resize(width);
  w.scaling.feature_scale.resize(width);
  in.f64s(w.scaling.feature_mean);
  in.f64s(w.scaling.feature_scale);
  w.scaling.target_mean = in.f64();
  w.scaling.target_scale = in.f64();

  w.meta.seed = in.u64();
  w.meta.epochs_run = in.u64();
  w.meta.final_loss = in.f64();

  try {
    w.layers = NetworkWeights::layout(s);
  } catch (const DomainError& e) {
    in.fail(std::string("invalid network spec: ") + e.what());
  }
  if (in.u32() != w.layers.size()) in.fail("layer count does not match spec");
  w.params.assign(w.layers.back().end(), 0.0);
  for (const LayerShape& l : w.layers) {
    const std::uint32_t rows = in.u32();
    const std::uint32_t cols = in.u32();
    if (rows != l.out || cols != l.in) in.fail("layer shape does not match spec");
    in.f64s(std::span<double>(w.params).subspan(l.weights(), l.in * l.out + l.out));
  }
  if (in.remaining() != 0) in.fail("trailing bytes after model");
  try {
    w.validate();
  } catch (const std::exception& e) {
    in.fail(e.what());
  }
  return w;
}

void save_weights(const NetworkWeights& w, const std::filesystem::path& path) {
  binary::write_file(path, encode_weights(w));
}

NetworkWeights load_weights(const std::filesystem::path& path) {
  const auto bytes = binary::read_file(path);
  return decode_weights(bytes, path.string());
}

}  // namespace sawb
