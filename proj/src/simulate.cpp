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

#include "sawb/simulate.hpp"

#include <cmath>
#include <random>
#include <utility>

#include "sawb/common.hpp"
#include "sawb/kernels.hpp"

namespace sawb {

void Scenario::validate() const {
  if (!(sea.h_s > 0.0) || !std::isfinite(sea.h_s)) {
    throw DomainError("Scenario: significant wave height must be positive");
  }
  if (!(sea.t_1 > 0.0) || !std::isfinite(sea.t_1)) {
    throw DomainError("Scenario: mean wave period must be positive");
  }
  if (!(sea.mu_h >= 0.0 && sea.mu_h <= 180.0)) {
    throw DomainError("Scenario: heading must lie in [0, 180] degrees");
  }
  if (!(speed >= 0.0) || !std::isfinite(speed)) {
    throw DomainError("Scenario: speed must be non-negative");
  }
}

bool Scenario::within_campaign_ranges() const {
  using R = CampaignRanges;
  return sea.h_s >= R::h_s_min && sea.h_s <= R::h_s_max && sea.t_1 >= R::t_1_min &&
         sea.t_1 <= R::t_1_max && sea.mu_h >= R::mu_min && sea.mu_h <= R::mu_max &&
         speed >= R::speed_min && speed <= R::speed_max;
}

const std::vector<double>& ResponseSet::series(Dof dof) const {
  switch (dof) {
    case Dof::heave: return heave;
    case Dof::pitch: return pitch;
    case Dof::roll: return roll;
  }
  return heave;
}

std::vector<double>& ResponseSet::series(Dof dof) {
  return const_cast<std::vector<double>&>(std::as_const(*this).series(dof));
}

double SensorNoise::sigma(Dof dof) const {
  switch (dof) {
    case Dof::heave: return heave_m;
    case Dof::pitch: return deg_to_rad(pitch_deg);
    case Dof::roll: return deg_to_rad(roll_deg);
  }
  return 0.0;
}

std::uint64_t stream_seed(std::uint64_t scenario_seed, SeedStream stream) {
  return derive_seed(scenario_seed, static_cast<std::uint64_t>(stream));
}

ResponseComponents response_components(const VesselParams& vessel,
                                       const WaveRealization& wave,
                                       const Scenario& scenario) {
  const std::size_t n = wave.grid.size();
  ResponseComponents rc;
  rc.omega_e.resize(n);
  for (auto& a : rc.amplitude) a.resize(n);
  for (auto& p : rc.phase) p.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = wave.grid.omegas[i];
    for (Dof dof : kAllDofs) {
      const FrfPoint p = frf(vessel, dof, w, scenario.speed, scenario.sea.mu_h);
      const auto d = static_cast<std::size_t>(dof);
      rc.amplitude[d][i] = wave.amplitudes[i] * p.magnitude;
      rc.phase[d][i] = wave.phases[i] + p.phase;
      rc.omega_e[i] = std::max(std::abs(p.omega_e), kEncounterFloor);
    }
  }
  return rc;
}

ResponseSet simulate_response(const VesselParams& vessel, const Scenario& scenario,
                              const WaveRealization& wave) {
  vessel.validate();
  scenario.validate();
  const ResponseComponents rc = response_components(vessel, wave, scenario);

  ResponseSet out;
  out.scenario = scenario;
  out.times.resize(kResponseSamples);
  for (std::size_t j = 0; j < kResponseSamples; ++j) {
    out.times[j] = kResponseDt * static_cast<double>(j);
  }
  std::array<kernels::Channel, 3> channels;
  for (std::size_t d = 0; d < 3; ++d) {
    channels[d].amplitude = rc.amplitude[d];
    channels[d].phase = rc.phase[d];
  }
  std::array<std::vector<double>, 3> series;
  for (auto& s : series) s.assign(kResponseSamples, 0.0);
  kernels::synthesize_parallel(rc.omega_e, channels, kResponseDt, series);
  out.heave = std::move(series[0]);
  out.pitch = std::move(series[1]);
  out.roll = std::move(series[2]);
  return out;
}

ResponseSet simulate_response(const VesselParams& vessel, const Scenario& scenario,
                              const FrequencyGrid& grid) {
  scenario.validate();
  const WaveSpectrum spectrum = mpm_spectrum(scenario.sea.h_s, scenario.sea.t_1, grid);
  const WaveRealization wave =
      realize_wave(spectrum, stream_seed(scenario.seed, SeedStream::wave_phases));
  return simulate_response(vessel, scenario, wave);
}

ResponseSet add_sensor_noise(ResponseSet set, std::uint64_t seed, const SensorNoise& noise) {
  for (Dof dof : kAllDofs) {
    const double sigma = noise.sigma(dof);
    if (sigma == 0.0) continue;
    if (!(sigma > 0.0)) throw DomainError("add_sensor_noise: negative noise level");
    const auto stream = static_cast<SeedStream>(1 + static_cast<std::uint64_t>(dof));
    std::mt19937_64 rng(stream_seed(seed, stream));
    std::normal_distribution<double> gauss(0.0, sigma);
    for (double& v : set.series(dof)) v += gauss(rng);
  }
  return set;
}

}  // namespace sawb
