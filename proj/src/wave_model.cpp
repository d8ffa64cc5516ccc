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

#include "sawb/wave_model.hpp"

#include <cmath>
#include <random>
#include <string>

#include "sawb/common.hpp"

namespace sawb {

double cos_deg(double deg) {
  const double r = std::fmod(deg, 360.0);
  if (r == 0.0) return 1.0;
  if (r == 90.0 || r == -90.0 || r == 270.0 || r == -270.0) return 0.0;
  if (r == 180.0 || r == -180.0) return -1.0;
  return std::cos(deg_to_rad(deg));
}

double sin_deg(double deg) {
  const double r = std::fmod(deg, 360.0);
  if (r == 0.0 || r == 180.0 || r == -180.0) return 0.0;
  if (r == 90.0 || r == -270.0) return 1.0;
  if (r == -90.0 || r == 270.0) return -1.0;
  return std::sin(deg_to_rad(deg));
}

FrequencyGrid FrequencyGrid::uniform(double lo, double hi, std::size_t n) {
  if (n < 2 || !(lo > 0.0) || !(hi > lo)) {
    throw DomainError("FrequencyGrid::uniform: need n >= 2 and 0 < lo < hi");
  }
  FrequencyGrid g;
  const double step = (hi - lo) / static_cast<double>(n - 1);
  g.omegas.resize(n);
  g.d_omega.assign(n, step);
  for (std::size_t i = 0; i < n; ++i) {
    g.omegas[i] = lo + step * static_cast<double>(i);
  }
  g.omegas.back() = hi;
  return g;
}

FrequencyGrid FrequencyGrid::standard() {
  return uniform(kGridLowOmega, kGridHighOmega, kGridComponents);
}

void FrequencyGrid::validate() const {
  if (omegas.empty()) throw DomainError("FrequencyGrid: empty grid");
  if (omegas.size() != d_omega.size()) {
    throw DomainError("FrequencyGrid: width count does not match frequency count");
  }
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (!(omegas[i] > 0.0) || !std::isfinite(omegas[i])) {
      throw DomainError("FrequencyGrid: frequencies must be positive");
    }
    if (i > 0 && !(omegas[i] > omegas[i - 1])) {
      throw DomainError("FrequencyGrid: frequencies must be strictly increasing");
    }
    if (!(d_omega[i] > 0.0)) throw DomainError("FrequencyGrid: widths must be positive");
  }
}

double zero_crossing_period(double t_1) {
  if (!(t_1 > 0.0) || !std::isfinite(t_1)) {
    throw DomainError("zero_crossing_period: mean period must be positive");
  }
  return 0.9212 * t_1;
}

MpmCoefficients mpm_coefficients(double h_s, double t_1) {
  if (!(h_s > 0.0) || !std::isfinite(h_s)) {
    throw DomainError("mpm_spectrum: significant wave height must be positive");
  }
  const double t_z = zero_crossing_period(t_1);
  const double w4 = std::pow(kTwoPi / t_z, 4);
  return {h_s * h_s / (4.0 * kPi) * w4, w4 / kPi};
}

double mpm_density(const MpmCoefficients& c, double omega) {
  if (!(omega > 0.0)) return 0.0;
  const double w2 = omega * omega;
  const double w4 = w2 * w2;
  return c.a / (w4 * omega) * std::exp(-c.b / w4);
}

double WaveSpectrum::m0() const {
  double m = 0.0;
  for (std::size_t i = 0; i < ordinates.size(); ++i) m += ordinates[i] * grid.d_omega[i];
  return m;
}

WaveSpectrum mpm_spectrum(double h_s, double t_1, const FrequencyGrid& grid) {
  grid.validate();
  const MpmCoefficients c = mpm_coefficients(h_s, t_1);
  WaveSpectrum s;
  s.grid = grid;
  s.h_s = h_s;
  s.t_1 = t_1;
  s.ordinates.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    s.ordinates[i] = mpm_density(c, grid.omegas[i]);
  }
  return s;
}

double WaveRealization::m0() const {
  double m = 0.0;
  for (double a : amplitudes) m += 0.5 * a * a;
  return m;
}

WaveRealization realize_wave(const WaveSpectrum& spectrum, std::uint64_t seed) {
  spectrum.grid.validate();
  if (spectrum.ordinates.size() != spectrum.grid.size()) {
    throw DomainError("realize_wave: ordinate count does not match grid");
  }
  const std::size_t n = spectrum.grid.size();
  WaveRealization r;
  r.grid = spectrum.grid;
  r.amplitudes.resize(n);
  r.phases.resize(n);
  r.wavenumbers.resize(n);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase_dist(0.0, kTwoPi);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = spectrum.ordinates[i];
    if (!(s >= 0.0)) throw DomainError("realize_wave: negative spectral ordinate");
    r.amplitudes[i] = std::sqrt(2.0 * s * spectrum.grid.d_omega[i]);
    double eps = phase_dist(rng);
    if (eps >= kTwoPi) eps = 0.0;
    r.phases[i] = eps;
    r.wavenumbers[i] = deep_water_wavenumber(spectrum.grid.omegas[i]);
  }
  return r;
}

double wave_elevation(const WaveRealization& r, double x_w, double t) {
  double z = 0.0;
  for (std::size_t i = 0; i < r.amplitudes.size(); ++i) {
    z += r.amplitudes[i] * std::sin(r.wavenumbers[i] * x_w - r.grid.omegas[i] * t + r.phases[i]);
  }
  return z;
}

}  // namespace sawb
