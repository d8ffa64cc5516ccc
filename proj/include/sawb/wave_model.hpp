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

#ifndef SAWB_WAVE_MODEL_HPP_
#define SAWB_WAVE_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sawb {

// Discrete wave frequencies (rad/s) with per-component bin widths (rad/s).
struct FrequencyGrid {
  std::vector<double> omegas;
  std::vector<double> d_omega;

  // n equally spaced frequencies on [lo, hi]; every bin width is
  // (hi - lo) / (n - 1).
  static FrequencyGrid uniform(double lo, double hi, std::size_t n);

  // 500 components over 0.05..2.0 rad/s.
  static FrequencyGrid standard();

  std::size_t size() const { return omegas.size(); }

  // Throws DomainError unless frequencies are positive and strictly
  // increasing and widths are positive with matching count.
  void validate() const;
};

inline constexpr double kGridLowOmega = 0.05;
inline constexpr double kGridHighOmega = 2.0;
inline constexpr std::size_t kGridComponents = 500;

// Zero-crossing period from mean period, T_z = 0.9212 T_1.
double zero_crossing_period(double t_1);

struct MpmCoefficients {
  double a;  // m^2 s^-4
  double b;  // s^-4
};

MpmCoefficients mpm_coefficients(double h_s, double t_1);

// Modified Pierson-Moskowitz spectrum sampled on a grid.
struct WaveSpectrum {
  FrequencyGrid grid;
  std::vector<double> ordinates;  // m^2 s / rad
  double h_s = 0.0;
  double t_1 = 0.0;

  // Zeroth moment by the rectangle rule on the grid widths.
  double m0() const;
};

WaveSpectrum mpm_spectrum(double h_s, double t_1, const FrequencyGrid& grid);

// Density at a single frequency, A / w^5 * exp(-B / w^4).
double mpm_density(const MpmCoefficients& c, double omega);

// One realized uni-directional wave field.
struct WaveRealization {
  FrequencyGrid grid;
  std::vector<double> amplitudes;   // m
  std::vector<double> phases;       // rad, [0, 2pi)
  std::vector<double> wavenumbers;  // rad/m

  // Sum of A^2 / 2.
  double m0() const;
};

// Amplitudes sqrt(2 S dw), phases i.i.d. uniform on [0, 2pi) from `seed`,
// deep-water wavenumbers.
WaveRealization realize_wave(const WaveSpectrum& spectrum, std::uint64_t seed);

// zeta(x, t) = sum A sin(k x - w t + eps).
double wave_elevation(const WaveRealization& realization, double x_w, double t);

}  // namespace sawb

#endif  // SAWB_WAVE_MODEL_HPP_
