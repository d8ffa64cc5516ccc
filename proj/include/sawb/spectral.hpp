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

#ifndef SAWB_SPECTRAL_HPP_
#define SAWB_SPECTRAL_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sawb/vessel.hpp"

namespace sawb {

// Welch segmentation. Segments start at i * hop, i < segments.
struct WelchPolicy {
  std::size_t segment_length;
  std::size_t hop;
  std::size_t segments;

  std::size_t required_length() const { return (segments - 1) * hop + segment_length; }
  double overlap() const {
    return 1.0 - static_cast<double>(hop) / static_cast<double>(segment_length);
  }
};

// Heave and roll: 15 Hann segments of 1024 at 50 % overlap. Pitch: 13
// segments of 2048 with hop 512 (75 % overlap).
WelchPolicy welch_policy(Dof dof);

// One-sided PSD in angular frequency.
struct Psd {
  std::vector<double> freqs;      // rad/s
  std::vector<double> ordinates;  // unit^2 s / rad
  double d_omega = 0.0;           // rad/s
  double m0 = 0.0;                // unit^2
};

Psd welch_psd(std::span<const double> series, double dt, const WelchPolicy& policy);

// The per-DOF policy; the series must hold exactly 8192 samples.
Psd welch_psd(std::span<const double> series, double dt, Dof dof);

struct TopComponents {
  std::vector<double> ordinates;  // descending
  std::vector<double> freqs;      // index-aligned
};

// k largest ordinates, ties resolved towards the lower frequency.
TopComponents top_components(const Psd& psd, std::size_t k);

// Subset of {heave, pitch, roll}.
class DofMask {
 public:
  constexpr DofMask() = default;
  constexpr explicit DofMask(std::uint8_t bits) : bits_(bits & 7u) {}
  static constexpr DofMask all() { return DofMask(7); }
  static DofMask of(std::initializer_list<Dof> dofs);

  constexpr bool has(Dof d) const { return (bits_ >> static_cast<unsigned>(d)) & 1u; }
  constexpr std::uint8_t bits() const { return bits_; }
  std::size_t count() const;
  std::vector<Dof> dofs() const;  // heave, pitch, roll order
  // "heave", "heave+pitch", ..., "3dof".
  std::string name() const;
  static std::optional<DofMask> parse(const std::string& name);
  bool operator==(const DofMask&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

// The seven non-empty masks in study order: heave, pitch, roll,
// heave+pitch, heave+roll, pitch+roll, 3dof.
const std::array<DofMask, 7>& study_masks();

using DofPsds = std::array<std::optional<Psd>, 3>;

// Network input: per included DOF (heave, pitch, roll order) k ordinates,
// k frequencies and m0, then the vessel speed.
struct FeatureVector {
  DofMask mask;
  std::size_t k = 0;
  std::array<TopComponents, 3> top;  // only masked entries populated
  std::array<double, 3> m0{};
  double speed = 0.0;

  std::size_t width() const { return mask.count() * (2 * k + 1) + 1; }
  std::vector<double> flatten() const;
};

inline std::size_t feature_width(DofMask mask, std::size_t k) {
  return mask.count() * (2 * k + 1) + 1;
}

FeatureVector build_features(const DofPsds& psds, double speed, DofMask mask, std::size_t k);

}  // namespace sawb

#endif  // SAWB_SPECTRAL_HPP_
