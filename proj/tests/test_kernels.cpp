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

#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>
#include <random>
#include <vector>

#include "sawb/common.hpp"
#include "sawb/kernels.hpp"

namespace sawb::kernels {
namespace {

struct Input {
  std::vector<double> omegas;
  std::vector<Channel> channels;
};

Input random_input(std::size_t components, std::size_t channels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Input in;
  for (std::size_t i = 0; i < components; ++i) in.omegas.push_back(0.05 + 2.5 * u(rng));
  in.channels.resize(channels);
  for (Channel& c : in.channels) {
    for (std::size_t i = 0; i < components; ++i) {
      c.amplitude.push_back(u(rng));
      c.phase.push_back(kTwoPi * u(rng));
    }
  }
  return in;
}

TEST(Synthesis, ReferenceMatchesDefinition) {
  const Input in = random_input(7, 2, 1);
  std::vector<std::vector<double>> out(2, std::vector<double>(33));
  synthesize_reference(in.omegas, in.channels, 0.3, out);
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t j = 0; j < 33; ++j) {
      double s = 0.0;
      for (std::size_t n = 0; n < 7; ++n) {
        s += in.channels[c].amplitude[n] *
             std::sin(in.channels[c].phase[n] - in.omegas[n] * static_cast<double>(j) * 0.3);
      }
      EXPECT_NEAR(out[c][j], s, 1e-12);
    }
  }
}

TEST(Synthesis, ParallelMatchesReference) {
  const Input in = random_input(500, 3, 2);
  std::vector<std::vector<double>> ref(3, std::vector<double>(8192)), par = ref;
  synthesize_reference(in.omegas, in.channels, 2400.0 / 8192.0, ref);
  synthesize_parallel(in.omegas, in.channels, 2400.0 / 8192.0, par);
  double worst = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t j = 0; j < 8192; ++j) worst = std::max(worst, std::abs(ref[c][j] - par[c][j]));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Synthesis, ParallelHandlesPartialBlocks) {
  const Input in = random_input(11, 1, 3);
  for (std::size_t samples : {1u, 255u, 256u, 257u, 1000u}) {
    std::vector<std::vector<double>> ref(1, std::vector<double>(samples)), par = ref;
    synthesize_reference(in.omegas, in.channels, 0.1, ref);
    synthesize_parallel(in.omegas, in.channels, 0.1, par);
    for (std::size_t j = 0; j < samples; ++j) EXPECT_NEAR(ref[0][j], par[0][j], 1e-11);
  }
}

TEST(Synthesis, ParallelIndependentOfThreadCount) {
  const Input in = random_input(200, 3, 4);
  std::vector<std::vector<double>> a(3, std::vector<double>(4096)), b = a;
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  synthesize_parallel(in.omegas, in.channels, 0.25, a);
  omp_set_num_threads(4);
  synthesize_parallel(in.omegas, in.channels, 0.25, b);
  omp_set_num_threads(saved);
  EXPECT_EQ(a, b);
}

TEST(Synthesis, Linearity) {
  Input in = random_input(50, 1, 5);
  std::vector<std::vector<double>> a(1, std::vector<double>(512)), b = a;
  synthesize_parallel(in.omegas, in.channels, 0.2, a);
  for (double& x : in.channels[0].amplitude) x *= 2.0;
  synthesize_parallel(in.omegas, in.channels, 0.2, b);
  for (std::size_t j = 0; j < 512; ++j) EXPECT_EQ(b[0][j], 2.0 * a[0][j]);
}

TEST(Synthesis, RejectsMismatchedShapes) {
  const Input in = random_input(5, 2, 6);
  std::vector<std::vector<double>> out(1, std::vector<double>(10));
  EXPECT_THROW(synthesize_reference(in.omegas, in.channels, 0.1, out), DomainError);
  EXPECT_THROW(synthesize_parallel(in.omegas, in.channels, 0.1, out), DomainError);
}

}  // namespace
}  // namespace sawb::kernels
