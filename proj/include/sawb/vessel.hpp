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

#ifndef SAWB_VESSEL_HPP_
#define SAWB_VESSEL_HPP_

#include <array>
#include <string_view>

namespace sawb {

enum class Dof { heave = 0, pitch = 1, roll = 2 };

inline constexpr std::array<Dof, 3> kAllDofs = {Dof::heave, Dof::pitch, Dof::roll};

std::string_view dof_name(Dof dof);

// Main particulars of a mono-hull treated as homogeneous prisms.
struct VesselParams {
  double length = 2.05;             // m
  double breadth = 0.61;            // m
  double draught = 0.16;            // m
  double waterplane_coeff = 0.877;  // C_wp
  double block_coeff = 0.731;       // C_b
  double displacement = 150.0;      // kg
  double gm_t = 0.264;              // m

  void validate() const;
};

// Minimum |omega_e| used whenever the encounter frequency enters a
// denominator or the synthesized time series.
inline constexpr double kEncounterFloor = 1e-3;

struct Encounter {
  double omega_e;  // signed, rad/s
  double alpha;    // omega_e / omega
};

// omega_e = omega - k U cos(mu), deep water. Heading in degrees on
// [0, 180]; 180 is head seas.
Encounter encounter_frequency(double omega, double speed, double mu_deg);

struct FrfPoint {
  double omega = 0.0;
  double omega_e = 0.0;    // signed encounter frequency
  double magnitude = 0.0;  // m/m heave, rad/m pitch and roll
  double phase = 0.0;      // rad
};

FrfPoint frf(const VesselParams& vessel, Dof dof, double omega, double speed,
             double mu_deg);

// Roll hull idealization: an aft prism with the full breadth and a forward
// prism with a narrower waterline and a finer section, equal draught. The
// split keeps both the waterplane area and the displaced volume of the
// particulars.
struct RollHull {
  double aft_length;
  double fwd_length;
  double aft_breadth;
  double fwd_breadth;
  double fwd_section_coeff;  // sectional area / (breadth * draught)
  double natural_period;     // s
  double metacentric_radius; // BM = I_T / volume, m
  double restoring;          // C44, N m / rad
  double inertia;            // (T_N / 2 pi)^2 C44, kg m^2
};

// Fraction of the length taken by the full-breadth aft prism.
inline constexpr double kRollAftFraction = 0.5;

RollHull roll_hull(const VesselParams& vessel);

// Roll damping B44 at a given encounter frequency (N m s / rad).
double roll_damping(const VesselParams& vessel, double omega_e);

}  // namespace sawb

#endif  // SAWB_VESSEL_HPP_
