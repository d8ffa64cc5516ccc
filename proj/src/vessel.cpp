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

#include "sawb/vessel.hpp"

#include <cmath>
#include <complex>

#include "sawb/common.hpp"

namespace sawb {
namespace {

// sin(x) / x
double sinc(double x) {
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// (sin x - x cos x) / x^3
double cubic_sinc(double x) {
  if (std::abs(x) < 0.1) {
    const double x2 = x * x;
    return 1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0 - x2 * x2 * x2 / 45360.0;
  }
  return (std::sin(x) - x * std::cos(x)) / (x * x * x);
}

// Wave amplitude radiated per radian of roll by a wall-sided section of
// waterline breadth b (m/rad). The far field of the linear vertical velocity
// distribution x * phi' across the waterline, attenuated with draught:
//   (2 / k) (sin(kb/2) - (kb/2) cos(kb/2)) exp(-kT)
double roll_radiation_amplitude(double k, double b, double t) {
  const double x = 0.5 * k * b;
  return 0.25 * k * k * b * b * b * cubic_sinc(x) * std::exp(-k * t);
}

// Coefficients shared by the heave and pitch equations of motion.
struct VerticalModel {
  double omega_e;
  double alpha;      // clamped |omega_e| / omega
  double k;          // incident wavenumber
  double k_e;        // |k cos mu|
  double inertia;    // 2 k T alpha^2  (mass term times omega_e^2)
  double damping;    // Q^2 / (k B alpha^2)  (damping term times omega_e)
  double forcing_common;  // kappa * f
};

VerticalModel vertical_model(const VesselParams& v, double omega, double speed,
                             double mu_deg) {
  const Encounter enc = encounter_frequency(omega, speed, mu_deg);
  const double we = std::max(std::abs(enc.omega_e), kEncounterFloor);
  const double alpha = we / omega;
  const double k = deep_water_wavenumber(omega);
  const double b = v.block_coeff * v.breadth;
  const double t = v.draught;
  const double ka2 = k * alpha * alpha;  // radiated wavenumber we^2 / g
  const double q = 2.0 * std::sin(0.5 * ka2 * b) * std::exp(-ka2 * t);
  const double q2 = q * q;

  VerticalModel m;
  m.omega_e = enc.omega_e;
  m.alpha = alpha;
  m.k = k;
  m.k_e = std::abs(k * cos_deg(mu_deg));
  m.inertia = 2.0 * k * t * alpha * alpha;
  m.damping = q2 / (k * b * alpha * alpha);
  const double kappa = std::exp(-k * t);
  const double f = std::hypot(1.0 - k * t, q2 / (k * b * alpha * alpha * alpha));
  m.forcing_common = kappa * f;
  return m;
}

FrfPoint solve_vertical(const VesselParams& v, Dof dof, double omega, double speed,
                        double mu_deg) {
  const VerticalModel m = vertical_model(v, omega, speed, mu_deg);
  const double x = 0.5 * m.k_e * v.length;
  double forcing = 0.0;
  if (dof == Dof::heave) {
    forcing = m.forcing_common * sinc(x);
  } else {
    // 24 / ((k_e L)^2 L) (sin x - x cos x), written so that k_e -> 0 is safe.
    forcing = m.forcing_common * 6.0 * x / v.length * cubic_sinc(x);
  }
  const double re = 1.0 - m.inertia;
  const double im = m.damping;
  FrfPoint p;
  p.omega = omega;
  p.omega_e = m.omega_e;
  p.magnitude = std::abs(forcing) / std::hypot(re, im);
  p.phase = std::atan2(im, re);
  return p;
}

FrfPoint solve_roll(const VesselParams& v, double omega, double speed, double mu_deg) {
  const RollHull hull = roll_hull(v);
  const Encounter enc = encounter_frequency(omega, speed, mu_deg);
  const double we = std::max(std::abs(enc.omega_e), kEncounterFloor);
  const double k = deep_water_wavenumber(omega);
  const double k_e = k * cos_deg(mu_deg);

  // Excitation: sectional moment from the damping by the Haskind relation at
  // the incident wavenumber, plus the Froude-Krylov sway force acting at the
  // centre of buoyancy (lever KB - KG = GM - BM), integrated along each prism
  // with the phase of the wave along the hull.
  const double half = 0.5 * v.length;
  const double prism_start[2] = {-half, -half + hull.aft_length};
  const double prism_len[2] = {hull.aft_length, hull.fwd_length};
  const double prism_b[2] = {hull.aft_breadth, hull.fwd_breadth};
  const double prism_cs[2] = {1.0, hull.fwd_section_coeff};
  const double lever = v.gm_t - hull.metacentric_radius;
  std::complex<double> moment{0.0, 0.0};
  for (int i = 0; i < 2; ++i) {
    const double sway = kWaterDensity * kGravity * prism_cs[i] * prism_b[i] *
                        -std::expm1(-k * v.draught);
    const double sectional =
        kWaterDensity * kGravity * roll_radiation_amplitude(k, prism_b[i], v.draught) / k +
        sway * lever;
    const double mid = prism_start[i] + 0.5 * prism_len[i];
    moment += sectional * prism_len[i] * sinc(0.5 * k_e * prism_len[i]) *
              std::polar(1.0, k_e * mid);
  }
  const double excitation = std::abs(sin_deg(mu_deg)) * std::abs(moment);

  const double damping = roll_damping(v, we);
  const double re = hull.restoring - hull.inertia * we * we;
  const double im = damping * we;
  FrfPoint p;
  p.omega = omega;
  p.omega_e = enc.omega_e;
  p.magnitude = excitation / std::hypot(re, im);
  p.phase = std::atan2(im, re);
  return p;
}

}  // namespace

std::string_view dof_name(Dof dof) {
  switch (dof) {
    case Dof::heave: return "heave";
    case Dof::pitch: return "pitch";
    case Dof::roll: return "roll";
  }
  return "?";
}

void VesselParams::validate() const {
  const auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
  if (!positive(length) || !positive(breadth) || !positive(draught) ||
      !positive(displacement) || !positive(gm_t)) {
    throw DomainError("VesselParams: dimensions, displacement and GM_T must be positive");
  }
  if (!(waterplane_coeff > 0.0 && waterplane_coeff <= 1.0) ||
      !(block_coeff > 0.0 && block_coeff <= 1.0)) {
    throw DomainError("VesselParams: form coefficients must lie in (0, 1]");
  }
}

Encounter encounter_frequency(double omega, double speed, double mu_deg) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("encounter_frequency: wave frequency must be positive");
  }
  if (!(speed >= 0.0) || !std::isfinite(speed)) {
    throw DomainError("encounter_frequency: speed must be non-negative");
  }
  if (!(mu_deg >= 0.0 && mu_deg <= 180.0)) {
    throw DomainError("encounter_frequency: heading must lie in [0, 180] degrees");
  }
  const double k = deep_water_wavenumber(omega);
  const double we = omega - k * speed * cos_deg(mu_deg);
  return {we, we / omega};
}

RollHull roll_hull(const VesselParams& v) {
  v.validate();
  const double s = kRollAftFraction;
  const double fwd_ratio = (v.waterplane_coeff - s) / (1.0 - s);
  if (!(fwd_ratio > 0.0)) {
    throw DomainError("roll_hull: waterplane coefficient too small for the two-prism split");
  }
  const double section = (v.block_coeff - s) / ((1.0 - s) * fwd_ratio);
  if (!(section > 0.0 && section <= 1.0)) {
    throw DomainError("roll_hull: block and waterplane coefficients are inconsistent");
  }
  RollHull h;
  h.aft_length = s * v.length;
  h.fwd_length = (1.0 - s) * v.length;
  h.aft_breadth = v.breadth;
  h.fwd_breadth = fwd_ratio * v.breadth;
  h.fwd_section_coeff = section;
  // Empirical natural roll period, T = 2 C B / sqrt(GM).
  const double c = 0.373 + 0.023 * v.breadth / v.draught - 0.043 * v.length / 100.0;
  h.natural_period = 2.0 * c * v.breadth / std::sqrt(v.gm_t);
  const double b_aft = h.aft_breadth, b_fwd = h.fwd_breadth;
  const double i_wp = (h.aft_length * b_aft * b_aft * b_aft + h.fwd_length * b_fwd * b_fwd * b_fwd) / 12.0;
  h.metacentric_radius = i_wp / (v.block_coeff * v.length * v.breadth * v.draught);
  h.restoring = v.displacement * kGravity * v.gm_t;
  const double r = h.natural_period / kTwoPi;
  h.inertia = r * r * h.restoring;
  return h;
}

double roll_damping(const VesselParams& v, double omega_e) {
  const RollHull h = roll_hull(v);
  const double we = std::max(std::abs(omega_e), kEncounterFloor);
  const double k = we * we / kGravity;
  const double a_aft = roll_radiation_amplitude(k, h.aft_breadth, v.draught);
  const double a_fwd = roll_radiation_amplitude(k, h.fwd_breadth, v.draught);
  const double scale = kWaterDensity * kGravity * kGravity / (we * we * we);
  return scale * (h.aft_length * a_aft * a_aft + h.fwd_length * a_fwd * a_fwd);
}

FrfPoint frf(const VesselParams& vessel, Dof dof, double omega, double speed,
             double mu_deg) {
  vessel.validate();
  if (dof == Dof::roll) return solve_roll(vessel, omega, speed, mu_deg);
  return solve_vertical(vessel, dof, omega, speed, mu_deg);
}

}  // namespace sawb
