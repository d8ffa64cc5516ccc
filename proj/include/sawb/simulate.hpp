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

#ifndef SAWB_SIMULATE_HPP_
#define SAWB_SIMULATE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "sawb/vessel.hpp"
#include "sawb/wave_model.hpp"

namespace sawb {

struct SeaState {
  double h_s = 0.0;   // m
  double t_1 = 0.0;   // s
  double mu_h = 0.0;  // deg, 180 = head seas
};

struct Scenario {
  SeaState sea;
  double speed = 0.0;  // m/s
  std::uint64_t seed = 0;

  // Physical validity (positive height and period, heading on [0, 180],
  // non-negative speed).
  void validate() const;
  // Inside the campaign sampling ranges.
  bool within_campaign_ranges() const;
};

struct CampaignRanges {
  static constexpr double h_s_min = 0.5, h_s_max = 2.5;
  static constexpr double t_1_min = 4.0, t_1_max = 13.0;
  static constexpr double mu_min = 0.0, mu_max = 180.0;
  static constexpr double speed_min = 0.0, speed_max = 5.0;
};

inline constexpr std::size_t kResponseSamples = 8192;
inline constexpr double kResponseDuration = 2400.0;  // s
inline constexpr double kResponseDt = kResponseDuration / kResponseSamples;

struct ResponseSet {
  std::vector<double> times;
  std::vector<double> heave;  // m
  std::vector<double> pitch;  // rad
  std::vector<double> roll;   // rad
  Scenario scenario;

  const std::vector<double>& series(Dof dof) const;
  std::vector<double>& series(Dof dof);
};

// IMU noise standard deviations. Angles are given in degrees and converted
// to radians when the noise is drawn.
struct SensorNoise {
  double heave_m = 0.01;
  double pitch_deg = 0.028;
  double roll_deg = 0.011;

  static SensorNoise none() { return {0.0, 0.0, 0.0}; }
  double sigma(Dof dof) const;  // internal units (m or rad)
};

// Sub-seed streams derived from a scenario seed.
enum class SeedStream : std::uint64_t { wave_phases = 0, noise_heave = 1, noise_pitch = 2, noise_roll = 3 };

std::uint64_t stream_seed(std::uint64_t scenario_seed, SeedStream stream);

// Per-component FRF table for one scenario.
struct ResponseComponents {
  std::vector<double> omega_e;                    // |omega_e| floored, rad/s
  std::array<std::vector<double>, 3> amplitude;   // A_w |FRF|
  std::array<std::vector<double>, 3> phase;       // eps + FRF phase
};

ResponseComponents response_components(const VesselParams& vessel,
                                       const WaveRealization& wave,
                                       const Scenario& scenario);

// Noise-free heave, pitch and roll over 8192 samples spanning 2400 s.
ResponseSet simulate_response(const VesselParams& vessel, const Scenario& scenario,
                              const FrequencyGrid& grid = FrequencyGrid::standard());

// Same, from an explicit wave realization.
ResponseSet simulate_response(const VesselParams& vessel, const Scenario& scenario,
                              const WaveRealization& wave);

// Adds i.i.d. Gaussian noise per sample and DOF, one sub-seed per DOF.
ResponseSet add_sensor_noise(ResponseSet set, std::uint64_t seed,
                             const SensorNoise& noise = {});

}  // namespace sawb

#endif  // SAWB_SIMULATE_HPP_
