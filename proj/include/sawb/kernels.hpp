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

#ifndef SAWB_KERNELS_HPP_
#define SAWB_KERNELS_HPP_

#include <cstddef>
#include <span>
#include <vector>

// Sum-of-sinusoids synthesis shared by the wave and response simulators.
//
// For components n with angular frequency w_n and, per output channel c, a
// complex coefficient a_cn exp(i phi_cn), the kernels evaluate
//
//   y_c[j] = sum_n a_cn sin(phi_cn - w_n j dt),   j = 0 .. samples-1.
//
// synthesize_reference evaluates every sine directly and is kept as the
// oracle. synthesize_parallel rotates unit phasors sample-to-sample inside
// fixed-size time blocks (re-anchored exactly at each block start) and
// distributes blocks over OpenMP threads; its output does not depend on the
// thread count.
namespace sawb::kernels {

struct Channel {
  std::vector<double> amplitude;
  std::vector<double> phase;
};

inline constexpr std::size_t kSynthesisBlock = 256;

void synthesize_reference(std::span<const double> omegas,
                          std::span<const Channel> channels, double dt,
                          std::span<std::vector<double>> out);

void synthesize_parallel(std::span<const double> omegas,
                         std::span<const Channel> channels, double dt,
                         std::span<std::vector<double>> out);

}  // namespace sawb::kernels

#endif  // SAWB_KERNELS_HPP_
