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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sawb/common.hpp"
#include "sawb/kernels.hpp"
#include "sawb/simulate.hpp"
#include "sawb/spectral.hpp"
#include "sawb/wave_model.hpp"

namespace {

using sawb::kernels::Channel;

struct SynthesisInput {
  std::vector<double> omegas;
  std::vector<Channel> channels;
};

SynthesisInput make_input(std::size_t components) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SynthesisInput in;
  const sawb::FrequencyGrid g = sawb::FrequencyGrid::uniform(0.05, 2.0, components);
  in.omegas = g.omegas;
  in.channels.resize(3);
  for (Channel& c : in.channels) {
    for (std::size_t i = 0; i < components; ++i) {
      c.amplitude.push_back(u(rng));
      c.phase.push_back(sawb::kTwoPi * u(rng));
    }
  }
  return in;
}

template <auto Kernel>
void BM_Synthesis(benchmark::State& state) {
  const SynthesisInput in = make_input(static_cast<std::size_t>(state.range(0)));
  std::vector<std::vector<double>> out(3, std::vector<double>(sawb::kResponseSamples));
  for (auto _ : state) {
    Kernel(in.omegas, in.channels, sawb::kResponseDt, out);
    benchmark::DoNotOptimize(out[0].data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 3 *
                          static_cast<long>(sawb::kResponseSamples));
}

BENCHMARK_TEMPLATE(BM_Synthesis, sawb::kernels::synthesize_reference)->Arg(100)->Arg(500);
BENCHMARK_TEMPLATE(BM_Synthesis, sawb::kernels::synthesize_parallel)->Arg(100)->Arg(500);

void BM_Welch(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> x(sawb::kResponseSamples);
  for (double& v : x) v = n(rng);
  const auto dof = static_cast<sawb::Dof>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sawb::welch_psd(x, sawb::kResponseDt, dof).m0);
  }
}
BENCHMARK(BM_Welch)->Arg(0)->Arg(1);

void BM_SimulateResponse(benchmark::State& state) {
  const sawb::VesselParams v;
  sawb::Scenario s{{1.5, 8.0, 135.0}, 2.5, 11};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sawb::simulate_response(v, s).heave.data());
  }
}
BENCHMARK(BM_SimulateResponse);

}  // namespace

BENCHMARK_MAIN();
