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

#ifndef SAWB_TESTS_ORACLES_HPP_
#define SAWB_TESTS_ORACLES_HPP_

// Reference computations written without the library: brute-force DFT and
// Welch, finite differences, and plain statistics.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

// X_k = sum_n x_n exp(-2 pi i k n / N) for k = 0 .. N/2.
inline std::vector<std::complex<double>> dft_half(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = -2.0 * kPi * static_cast<double>((k * j) % n) / static_cast<double>(n);
      acc += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

// Periodic Hann window, 0.5 - 0.5 cos(2 pi j / N).
inline std::vector<double> hann(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(j) / static_cast<double>(n));
  }
  return w;
}

struct WelchResult {
  std::vector<double> freqs;
  std::vector<double> psd;
  double m0 = 0.0;
};

// Averaged, mean-removed, Hann-windowed periodograms as a one-sided
// density in angular frequency. O(N^2) per segment.
inline WelchResult welch(std::span<const double> x, double dt, std::size_t seg, std::size_t hop,
                         std::size_t count) {
  const std::vector<double> w = hann(seg);
  double u = 0.0;
  for (double v : w) u += v * v;
  WelchResult r;
  r.psd.assign(seg / 2 + 1, 0.0);
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<double> y(x.begin() + static_cast<std::ptrdiff_t>(s * hop),
                          x.begin() + static_cast<std::ptrdiff_t>(s * hop + seg));
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(seg);
    for (std::size_t j = 0; j < seg; ++j) y[j] = (y[j] - mean) * w[j];
    const auto X = dft_half(y);
    for (std::size_t k = 0; k < X.size(); ++k) r.psd[k] += std::norm(X[k]);
  }
  const double d_omega = 2.0 * kPi / (static_cast<double>(seg) * dt);
  for (std::size_t k = 0; k < r.psd.size(); ++k) {
    double v = r.psd[k] * dt / (2.0 * kPi * u * static_cast<double>(count));
    if (k != 0 && k != seg / 2) v *= 2.0;
    r.psd[k] = v;
    r.freqs.push_back(static_cast<double>(k) * d_omega);
    r.m0 += v * d_omega;
  }
  return r;
}

// Central difference of f about x along coordinate i.
inline double central_difference(const std::function<double(const std::vector<double>&)>& f,
                                 std::vector<double> x, std::size_t i, double h) {
  const double x0 = x[i];
  x[i] = x0 + h;
  const double fp = f(x);
  x[i] = x0 - h;
  const double fm = f(x);
  return (fp - fm) / (2.0 * h);
}

inline double mean(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// Population variance.
inline double variance(std::span<const double> x) {
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size());
}

inline double pearson(std::span<const double> a, std::span<const double> b) {
  const double ma = mean(a), mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

// Average ranks (1-based) by counting, O(N^2).
inline std::vector<double> ranks(std::span<const double> x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double less = 0.0, equal = 0.0;
    for (double v : x) {
      if (v < x[i]) less += 1.0;
      if (v == x[i]) equal += 1.0;
    }
    r[i] = less + (equal + 1.0) / 2.0;
  }
  return r;
}

inline double spearman(std::span<const double> a, std::span<const double> b) {
  const auto ra = ranks(a), rb = ranks(b);
  return pearson(ra, rb);
}

inline double rmse(std::span<const double> est, std::span<const double> truth) {
  double s = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) s += (truth[i] - est[i]) * (truth[i] - est[i]);
  return std::sqrt(s / static_cast<double>(est.size()));
}

inline double r_squared(std::span<const double> est, std::span<const double> truth) {
  const double m = mean(truth);
  double res = 0.0, tot = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    res += (truth[i] - est[i]) * (truth[i] - est[i]);
    tot += (truth[i] - m) * (truth[i] - m);
  }
  return 1.0 - res / tot;
}

// Closed-form MPM integral over (0, inf): A / (4 B).
inline double mpm_m0_exact(double h_s) { return h_s * h_s / 16.0; }

}  // namespace oracle

#endif  // SAWB_TESTS_ORACLES_HPP_
