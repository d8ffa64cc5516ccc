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

#ifndef SAWB_COMMON_HPP_
#define SAWB_COMMON_HPP_

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sawb {

inline constexpr double kGravity = 9.81;         // m/s^2
inline constexpr double kWaterDensity = 1025.0;  // kg/m^3
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Invalid argument or out-of-domain input. Maps to CLI exit code 1.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// File missing, unreadable, or malformed. Maps to CLI exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite values during a numeric procedure. Maps to CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }

// Cosine of an angle in degrees, exact at multiples of 90.
double cos_deg(double deg);
double sin_deg(double deg);

// Deep-water dispersion, k = omega^2 / g.
inline double deep_water_wavenumber(double omega) {
  return omega * omega / kGravity;
}

// SplitMix64 finalizer; used to derive independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return mix_seed(mix_seed(base) ^ mix_seed(stream + 0x5851f42d4c957f2dULL));
}

template <typename... Rest>
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                          Rest... rest) {
  return derive_seed(derive_seed(base, stream), static_cast<std::uint64_t>(rest)...);
}

}  // namespace sawb

#endif  // SAWB_COMMON_HPP_
