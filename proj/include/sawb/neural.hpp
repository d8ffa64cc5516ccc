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

#ifndef SAWB_NEURAL_HPP_
#define SAWB_NEURAL_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sawb/spectral.hpp"

namespace sawb {

enum class Target : std::uint8_t { hs = 0, t1 = 1, mu = 2 };

inline constexpr std::array<Target, 3> kAllTargets = {Target::hs, Target::t1, Target::mu};

std::string_view target_name(Target t);  // "hs", "t1", "mu"
std::optional<Target> parse_target(std::string_view name);
std::string_view target_unit(Target t);  // "m", "s", "deg"

// Spectral components fed per DOF: 30 for wave height and period, 80 for
// heading.
std::size_t target_components(Target t);

// Branch/trunk topology and training schedule.
struct NetworkSpec {
  DofMask mask;
  Target target = Target::hs;
  std::size_t k = 30;
  std::size_t branch_nodes = 16;
  std::vector<std::size_t> trunk_layers;
  std::size_t batch_size = 32;
  std::size_t epochs = 100;
  double learning_rate = 1e-3;

  // Configuration table for a DOF mask and target.
  static NetworkSpec standard(DofMask mask, Target target);

  std::size_t input_width() const { return feature_width(mask, k); }
  std::size_t branch_input_width() const { return 2 * k; }
  // Branch outputs, one m0 per DOF, and the speed.
  std::size_t trunk_input_width() const { return mask.count() * (branch_nodes + 1) + 1; }
  bool matches_standard() const;
  void validate() const;
  bool operator==(const NetworkSpec&) const = default;
};

// Dense layer located inside the flat parameter vector: an out x in
// row-major weight matrix followed by out biases.
struct LayerShape {
  std::size_t in = 0;
  std::size_t out = 0;
  std::size_t offset = 0;

  std::size_t weights() const { return offset; }
  std::size_t biases() const { return offset + in * out; }
  std::size_t end() const { return biases() + out; }
};

// Per-feature and target standardization constants.
struct Scaling {
  std::vector<double> feature_mean;
  std::vector<double> feature_scale;
  double target_mean = 0.0;
  double target_scale = 1.0;

  bool empty() const { return feature_mean.empty(); }
  void standardize(std::span<const double> raw, std::span<double> out) const;
};

struct TrainingMeta {
  std::uint64_t seed = 0;
  std::uint64_t epochs_run = 0;
  double final_loss = std::numeric_limits<double>::quiet_NaN();
};

// Trained (or initialized) network. Layers in `layers` are the branches in
// mask order, then the trunk hidden layers, then the single linear output.
struct NetworkWeights {
  NetworkSpec spec;
  std::vector<LayerShape> layers;
  std::vector<double> params;
  Scaling scaling;
  TrainingMeta meta;

  std::size_t branch_count() const { return spec.mask.count(); }
  static std::vector<LayerShape> layout(const NetworkSpec& spec);
  void validate() const;
};

// Glorot-uniform weights, zero biases.
NetworkWeights init_network(const NetworkSpec& spec, std::uint64_t seed);

inline double init_bound(const LayerShape& l) {
  return std::sqrt(6.0 / static_cast<double>(l.in + l.out));
}

// Forward and backward passes with reusable scratch buffers. Inputs are
// already standardized. Not shared between threads.
class Evaluator {
 public:
  explicit Evaluator(const NetworkSpec& spec);

  double forward(const NetworkWeights& w, std::span<const double> x);

  // Adds d/dparams of scale * (y_hat - y)^2 to `grad`; returns y_hat.
  double accumulate_gradient(const NetworkWeights& w, std::span<const double> x, double y,
                             double scale, std::span<double> grad);

  // Activations of every hidden layer from the last forward pass.
  std::span<const double> hidden(std::size_t layer) const { return act_[layer]; }

 private:
  std::vector<LayerShape> layers_;
  std::size_t branches_ = 0;
  std::size_t k2_ = 0;
  std::vector<std::vector<double>> act_;    // post-activation per layer
  std::vector<double> trunk_in_;
  std::vector<std::vector<double>> delta_;  // dL/dz per layer
  std::vector<double> trunk_delta_;
};

// Row-major sample matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
};

struct TrainOptions {
  std::optional<std::size_t> epochs;  // overrides spec.epochs
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Called after every epoch with the epoch count so far and the current
  // weights (scaling included); returning false stops training.
  std::function<bool(std::size_t, const NetworkWeights&)> on_epoch;
};

struct TrainResult {
  NetworkWeights weights;
  std::vector<double> train_loss;  // per-epoch MSE, standardized target units
  std::vector<double> val_loss;    // empty when no validation data
};

// Mini-batch Adam on MSE. Scaling constants come from `x_train` only.
// Throws NumericError if the loss becomes non-finite.
TrainResult train(const NetworkSpec& spec, const Matrix& x_train, std::span<const double> y_train,
                  const Matrix& x_val, std::span<const double> y_val, std::uint64_t seed,
                  const TrainOptions& options = {});

Scaling fit_scaling(const Matrix& x, std::span<const double> y);

// Applies the stored scaling, runs the network, and restores target units.
double predict(const NetworkWeights& w, std::span<const double> features);
std::vector<double> predict(const NetworkWeights& w, const Matrix& features);

// Binary model file: "SAWB" magic, version, spec, scaling, metadata, then
// per layer rows, cols, row-major weights and biases, all little-endian.
inline constexpr std::uint32_t kModelFormatVersion = 1;
void save_weights(const NetworkWeights& w, const std::filesystem::path& path);
NetworkWeights load_weights(const std::filesystem::path& path);
std::vector<std::uint8_t> encode_weights(const NetworkWeights& w);
NetworkWeights decode_weights(std::span<const std::uint8_t> bytes, const std::string& origin);

}  // namespace sawb

#endif  // SAWB_NEURAL_HPP_
