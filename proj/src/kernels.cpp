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

#include "sawb/kernels.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

#include "sawb/common.hpp"

namespace sawb::kernels {
namespace {

void check_shapes(std::span<const double> omegas, std::span<const Channel> channels,
                  std::span<std::vector<double>> out) {
  if (channels.size() != out.size()) {
    throw DomainError("synthesize: channel and output counts differ");
  }
  for (const Channel& c : channels) {
    if (c.amplitude.size() != omegas.size() || c.phase.size() != omegas.size()) {
      throw DomainError("synthesize: channel length does not match component count");
    }
  }
}

}  // namespace

void synthesize_reference(std::span<const double> omegas,
                          std::span<const Channel> channels, double dt,
                          std::span<std::vector<double>> out) {
  check_shapes(omegas, channels, out);
  for (std::size_t c = 0; c < channels.size(); ++c) {
    std::vector<double>& y = out[c];
    for (std::size_t j = 0; j < y.size(); ++j) {
      const double t = dt * static_cast<double>(j);
      double s = 0.0;
      for (std::size_t n = 0; n < omegas.size(); ++n) {
        s += channels[c].amplitude[n] * std::sin(channels[c].phase[n] - omegas[n] * t);
      }
      y[j] = s;
    }
  }
}

void synthesize_parallel(std::span<const double> omegas,
                         std::span<const Channel> channels, double dt,
                         std::span<std::vector<double>> out) {
  check_shapes(omegas, channels, out);
  if (channels.empty()) return;
  const std::size_t samples = out[0].size();
  for (const auto& y : out) {
    if (y.size() != samples) throw DomainError("synthesize: outputs differ in length");
  }
  const std::size_t nc = channels.size();
  const std::size_t nw = omegas.size();

  // Coefficients a exp(i phi), channel-major.
  std::vector<double> cr(nc * nw), ci(nc * nw);
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t n = 0; n < nw; ++n) {
      cr[c * nw + n] = channels[c].amplitude[n] * std::cos(channels[c].phase[n]);
      ci[c * nw + n] = channels[c].amplitude[n] * std::sin(channels[c].phase[n]);
    }
  }
  // One-step rotation exp(-i w dt).
  std::vector<double> rr(nw), ri(nw);
  for (std::size_t n = 0; n < nw; ++n) {
    rr[n] = std::cos(omegas[n] * dt);
    ri[n] = -std::sin(omegas[n] * dt);
  }

  const std::ptrdiff_t blocks =
      static_cast<std::ptrdiff_t>((samples + kSynthesisBlock - 1) / kSynthesisBlock);

#pragma omp parallel if (!omp_in_parallel())
  {
    std::vector<double> pr(nw), pi(nw);
    std::vector<double> acc(nc);
#pragma omp for schedule(static)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
      const std::size_t j0 = static_cast<std::size_t>(b) * kSynthesisBlock;
      const std::size_t j1 = std::min(samples, j0 + kSynthesisBlock);
      const double t0 = dt * static_cast<double>(j0);
      for (std::size_t n = 0; n < nw; ++n) {
        pr[n] = std::cos(omegas[n] * t0);
        pi[n] = -std::sin(omegas[n] * t0);
      }
      for (std::size_t j = j0; j < j1; ++j) {
        // Im(c p) = cr pi + ci pr
        for (std::size_t c = 0; c < nc; ++c) {
          const double* a_r = cr.data() + c * nw;
          const double* a_i = ci.data() + c * nw;
          double s = 0.0;
#pragma omp simd reduction(+ : s)
          for (std::size_t n = 0; n < nw; ++n) s += a_r[n] * pi[n] + a_i[n] * pr[n];
          out[c][j] = s;
        }
#pragma omp simd
        for (std::size_t n = 0; n < nw; ++n) {
          const double r = pr[n] * rr[n] - pi[n] * ri[n];
          const double i = pr[n] * ri[n] + pi[n] * rr[n];
          pr[n] = r;
          pi[n] = i;
        }
      }
    }
  }
}

}  // namespace sawb::kernels
