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

#include "sawb/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "sawb/common.hpp"
#include "sawb/simulate.hpp"

namespace sawb {
namespace {

// FFTW planning is not thread-safe; plans are created once per length under
// a lock and then executed through the new-array interface, which is.
class R2cPlanCache {
 public:
  static R2cPlanCache& instance() {
    static R2cPlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    auto* in = fftw_alloc_real(n);
    auto* out = fftw_alloc_complex(n / 2 + 1);
    fftw_plan p = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(n, p);
    return p;
  }

  ~R2cPlanCache() {
    for (auto& [n, p] : plans_) fftw_destroy_plan(p);
  }

 private:
  std::mutex mu_;
  std::map<std::size_t, fftw_plan> plans_;
};

// Periodic Hann window.
std::vector<double> hann(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n));
  }
  return w;
}

}  // namespace

WelchPolicy welch_policy(Dof dof) {
  if (dof == Dof::pitch) return {2048, 512, 13};
  return {1024, 512, 15};
}

Psd welch_psd(std::span<const double> series, double dt, const WelchPolicy& policy) {
  if (!(dt > 0.0)) throw DomainError("welch_psd: dt must be positive");
  if (policy.segment_length < 2 || policy.segments == 0 || policy.hop == 0) {
    throw DomainError("welch_psd: invalid segmentation");
  }
  if (series.size() < policy.required_length()) {
    throw DomainError("welch_psd: series shorter than the segmentation requires");
  }
  const std::size_t n = policy.segment_length;
  const std::size_t nf = n / 2 + 1;
  const std::vector<double> window = hann(n);
  const double u = std::inner_product(window.begin(), window.end(), window.begin(), 0.0);

  fftw_plan plan = R2cPlanCache::instance().get(n);
  std::vector<double> buf(n);
  std::vector<fftw_complex> spec(nf);
  std::vector<double> acc(nf, 0.0);
  for (std::size_t s = 0; s < policy.segments; ++s) {
    const double* seg = series.data() + s * policy.hop;
    const double mean = std::accumulate(seg, seg + n, 0.0) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = (seg[i] - mean) * window[i];
    fftw_execute_dft_r2c(plan, buf.data(), spec.data());
    for (std::size_t j = 0; j < nf; ++j) {
      acc[j] += spec[j][0] * spec[j][0] + spec[j][1] * spec[j][1];
    }
  }

  Psd psd;
  psd.d_omega = kTwoPi / (static_cast<double>(n) * dt);
  psd.freqs.resize(nf);
  psd.ordinates.resize(nf);
  // |X|^2 dt / (2 pi U) per segment, doubled away from DC and Nyquist.
  const double scale = dt / (kTwoPi * u * static_cast<double>(policy.segments));
  for (std::size_t j = 0; j < nf; ++j) {
    const bool edge = (j == 0) || (n % 2 == 0 && j == nf - 1);
    psd.freqs[j] = psd.d_omega * static_cast<double>(j);
    psd.ordinates[j] = acc[j] * scale * (edge ? 1.0 : 2.0);
  }
  psd.m0 = std::accumulate(psd.ordinates.begin(), psd.ordinates.end(), 0.0) * psd.d_omega;
  return psd;
}

Psd welch_psd(std::span<const double> series, double dt, Dof dof) {
  if (series.size() != kResponseSamples) {
    throw DomainError("welch_psd: response series must hold 8192 samples");
  }
  return welch_psd(series, dt, welch_policy(dof));
}

TopComponents top_components(const Psd& psd, std::size_t k) {
  if (k > psd.ordinates.size()) {
    throw DomainError("top_components: k exceeds the number of ordinates");
  }
  std::vector<std::size_t> idx(psd.ordinates.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Frequencies increase with index, so index order is the tie-break.
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (psd.ordinates[a] != psd.ordinates[b]) {
                        return psd.ordinates[a] > psd.ordinates[b];
                      }
                      return a < b;
                    });
  TopComponents out;
  out.ordinates.resize(k);
  out.freqs.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.ordinates[i] = psd.ordinates[idx[i]];
    out.freqs[i] = psd.freqs[idx[i]];
  }
  return out;
}

DofMask DofMask::of(std::initializer_list<Dof> dofs) {
  std::uint8_t b = 0;
  for (Dof d : dofs) b |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(d));
  return DofMask(b);
}

std::size_t DofMask::count() const {
  return static_cast<std::size_t>(has(Dof::heave)) + has(Dof::pitch) + has(Dof::roll);
}

std::vector<Dof> DofMask::dofs() const {
  std::vector<Dof> out;
  for (Dof d : kAllDofs) {
    if (has(d)) out.push_back(d);
  }
  return out;
}

std::string DofMask::name() const {
  if (bits_ == 7) return "3dof";
  std::string s;
  for (Dof d : dofs()) {
    if (!s.empty()) s += '+';
    s += dof_name(d);
  }
  return s.empty() ? "none" : s;
}

std::optional<DofMask> DofMask::parse(const std::string& name) {
  for (const DofMask& m : study_masks()) {
    if (m.name() == name) return m;
  }
  return std::nullopt;
}

const std::array<DofMask, 7>& study_masks() {
  static const std::array<DofMask, 7> masks = {
      DofMask::of({Dof::heave}),
      DofMask::of({Dof::pitch}),
      DofMask::of({Dof::roll}),
      DofMask::of({Dof::heave, Dof::pitch}),
      DofMask::of({Dof::heave, Dof::roll}),
      DofMask::of({Dof::pitch, Dof::roll}),
      DofMask::all(),
  };
  return masks;
}

std::vector<double> FeatureVector::flatten() const {
  std::vector<double> v;
  v.reserve(width());
  for (Dof d : mask.dofs()) {
    const auto i = static_cast<std::size_t>(d);
    v.insert(v.end(), top[i].ordinates.begin(), top[i].ordinates.end());
    v.insert(v.end(), top[i].freqs.begin(), top[i].freqs.end());
    v.push_back(m0[i]);
  }
  v.push_back(speed);
  return v;
}

FeatureVector build_features(const DofPsds& psds, double speed, DofMask mask, std::size_t k) {
  if (mask.count() == 0) throw DomainError("build_features: empty DOF mask");
  FeatureVector f;
  f.mask = mask;
  f.k = k;
  f.speed = speed;
  for (Dof d : mask.dofs()) {
    const auto i = static_cast<std::size_t>(d);
    if (!psds[i]) {
      throw DomainError("build_features: missing PSD for " + std::string(dof_name(d)));
    }
    f.top[i] = top_components(*psds[i], k);
    f.m0[i] = psds[i]->m0;
  }
  return f;
}

}  // namespace sawb
