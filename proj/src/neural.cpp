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

#include "sawb/neural.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "sawb/common.hpp"

namespace sawb {

std::string_view target_name(Target t) {
  switch (t) {
    case Target::hs: return "hs";
    case Target::t1: return "t1";
    case Target::mu: return "mu";
  }
  return "?";
}

std::optional<Target> parse_target(std::string_view name) {
  for (Target t : kAllTargets) {
    if (target_name(t) == name) return t;
  }
  return std::nullopt;
}

std::string_view target_unit(Target t) {
  switch (t) {
    case Target::hs: return "m";
    case Target::t1: return "s";
    case Target::mu: return "deg";
  }
  return "";
}

std::size_t target_components(Target t) { return t == Target::mu ? 80 : 30; }

NetworkSpec NetworkSpec::standard(DofMask mask, Target target) {
  if (mask.count() == 0) throw DomainError("NetworkSpec: empty DOF mask");
  NetworkSpec s;
  s.mask = mask;
  s.target = target;
  s.k = target_components(target);
  const std::size_t dofs = mask.count();
  if (target == Target::mu) {
    s.trunk_layers = dofs == 1 ? std::vector<std::size_t>{32, 16}
                               : std::vector<std::size_t>{32, 32, 16};
    s.batch_size = dofs == 1 ? 16 : 32;
  } else {
    s.trunk_layers = dofs == 1   ? std::vector<std::size_t>{16, 8}
                     : dofs == 2 ? std::vector<std::size_t>{16, 8, 8}
                                 : std::vector<std::size_t>{32, 32, 16};
    s.batch_size = dofs == 1 ? 32 : 16;
  }
  return s;
}

bool NetworkSpec::matches_standard() const {
  if (mask.count() == 0) return false;
  return *this == standard(mask, target);
}

void NetworkSpec::validate() const {
  if (mask.count() == 0) throw DomainError("NetworkSpec: empty DOF mask");
  if (k == 0 || branch_nodes == 0 || batch_size == 0) {
    throw DomainError("NetworkSpec: node counts and batch size must be positive");
  }
  for (std::size_t n : trunk_layers) {
    if (n == 0) throw DomainError("NetworkSpec: trunk node counts must be positive");
  }
  if (!(learning_rate > 0.0)) throw DomainError("NetworkSpec: learning rate must be positive");
}

void Scaling::standardize(std::span<const double> raw, std::span<double> out) const {
  if (raw.size() != feature_mean.size() || out.size() != raw.size()) {
    throw DomainError("Scaling: feature width mismatch");
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = (raw[i] - feature_mean[i]) / feature_scale[i];
  }
}

std::vector<LayerShape> NetworkWeights::layout(const NetworkSpec& spec) {
  spec.validate();
  std::vector<LayerShape> layers;
  std::size_t offset = 0;
  auto add = [&](std::size_t in, std::size_t out) {
    layers.push_back({in, out, offset});
    offset += in * out + out;
  };
  for (std::size_t b = 0; b < spec.mask.count(); ++b) add(spec.branch_input_width(), spec.branch_nodes);
  std::size_t in = spec.trunk_input_width();
  for (std::size_t n : spec.trunk_layers) {
    add(in, n);
    in = n;
  }
  add(in, 1);
  return layers;
}

void NetworkWeights::validate() const {
  const auto expected = layout(spec);
  if (expected.size() != layers.size()) throw DomainError("NetworkWeights: layer count mismatch");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].in != expected[i].in || layers[i].out != expected[i].out ||
        layers[i].offset != expected[i].offset) {
      throw DomainError("NetworkWeights: layer shape mismatch");
    }
  }
  if (params.size() != layers.back().end()) throw DomainError("NetworkWeights: parameter count mismatch");
  for (double p : params) {
    if (!std::isfinite(p)) throw NumericError("NetworkWeights: non-finite parameter");
  }
  if (!scaling.empty() && (scaling.feature_mean.size() != spec.input_width() ||
                           scaling.feature_scale.size() != spec.input_width())) {
    throw DomainError("NetworkWeights: scaling width mismatch");
  }
}

NetworkWeights init_network(const NetworkSpec& spec, std::uint64_t seed) {
  NetworkWeights w;
  w.spec = spec;
  w.layers = NetworkWeights::layout(spec);
  w.params.assign(w.layers.back().end(), 0.0);
  w.meta.seed = seed;
  std::mt19937_64 rng(seed);
  for (const LayerShape& l : w.layers) {
    std::uniform_real_distribution<double> dist(-init_bound(l), init_bound(l));
    for (std::size_t i = 0; i < l.in * l.out; ++i) w.params[l.weights() + i] = dist(rng);
  }
  return w;
}

namespace {

// z = W x + b
void dense(const double* params, const LayerShape& l, const double* x, double* z) {
  const double* w = params + l.weights();
  const double* b = params + l.biases();
  for (std::size_t o = 0; o < l.out; ++o) {
    const double* row = w + o * l.in;
    double s = 0.0;
#pragma omp simd reduction(+ : s)
    for (std::size_t i = 0; i < l.in; ++i) s += row[i] * x[i];
    z[o] = s + b[o];
  }
}

void relu(std::vector<double>& v) {
  for (double& x : v) x = x > 0.0 ? x : 0.0;
}

// grad_W += delta x^T, grad_b += delta
void accumulate_outer(const LayerShape& l, const double* delta, const double* x, double* grad) {
  double* gw = grad + l.weights();
  double* gb = grad + l.biases();
  for (std::size_t o = 0; o < l.out; ++o) {
    const double d = delta[o];
    if (d == 0.0) continue;
    double* row = gw + o * l.in;
#pragma omp simd
    for (std::size_t i = 0; i < l.in; ++i) row[i] += d * x[i];
    gb[o] += d;
  }
}

// back = W^T delta
void backpropagate(const double* params, const LayerShape& l, const double* delta, double* back) {
  const double* w = params + l.weights();
  std::fill(back, back + l.in, 0.0);
  for (std::size_t o = 0; o < l.out; ++o) {
    const double d = delta[o];
    if (d == 0.0) continue;
    const double* row = w + o * l.in;
#pragma omp simd
    for (std::size_t i = 0; i < l.in; ++i) back[i] += d * row[i];
  }
}

}  // namespace

Evaluator::Evaluator(const NetworkSpec& spec)
    : layers_(NetworkWeights::layout(spec)),
      branches_(spec.mask.count()),
      k2_(spec.branch_input_width()) {
  for (const LayerShape& l : layers_) {
    act_.emplace_back(l.out, 0.0);
    delta_.emplace_back(l.out, 0.0);
  }
  trunk_in_.assign(spec.trunk_input_width(), 0.0);
  trunk_delta_.assign(spec.trunk_input_width(), 0.0);
}

double Evaluator::forward(const NetworkWeights& w, std::span<const double> x) {
  const std::size_t stride = k2_ + 1;
  if (x.size() != branches_ * stride + 1) throw DomainError("forward: feature width mismatch");
  const double* p = w.params.data();
  const std::size_t bn = branches_ > 0 ? layers_[0].out : 0;
  for (std::size_t b = 0; b < branches_; ++b) {
    dense(p, layers_[b], x.data() + b * stride, act_[b].data());
    relu(act_[b]);
    std::copy(act_[b].begin(), act_[b].end(), trunk_in_.begin() + static_cast<std::ptrdiff_t>(b * bn));
    trunk_in_[branches_ * bn + b] = x[b * stride + k2_];
  }
  trunk_in_.back() = x.back();
  const std::size_t last = layers_.size() - 1;
  for (std::size_t l = branches_; l <= last; ++l) {
    const double* in = l == branches_ ? trunk_in_.data() : act_[l - 1].data();
    dense(p, layers_[l], in, act_[l].data());
    if (l != last) relu(act_[l]);
  }
  return act_[last][0];
}

double Evaluator::accumulate_gradient(const NetworkWeights& w, std::span<const double> x, double y,
                                      double scale, std::span<double> grad) {
  if (grad.size() != w.params.size()) throw DomainError("accumulate_gradient: gradient size mismatch");
  const double y_hat = forward(w, x);
  const double* p = w.params.data();
  const std::size_t last = layers_.size() - 1;
  const std::size_t stride = k2_ + 1;
  const std::size_t bn = branches_ > 0 ? layers_[0].out : 0;

  delta_[last][0] = 2.0 * scale * (y_hat - y);
  for (std::size_t l = last; l >= branches_; --l) {
    const double* in = l == branches_ ? trunk_in_.data() : act_[l - 1].data();
    accumulate_outer(layers_[l], delta_[l].data(), in, grad.data());
    if (l == branches_) {
      backpropagate(p, layers_[l], delta_[l].data(), trunk_delta_.data());
      break;
    }
    backpropagate(p, layers_[l], delta_[l].data(), delta_[l - 1].data());
    for (std::size_t i = 0; i < layers_[l - 1].out; ++i) {
      if (!(act_[l - 1][i] > 0.0)) delta_[l - 1][i] = 0.0;
    }
  }
  for (std::size_t b = 0; b < branches_; ++b) {
    for (std::size_t i = 0; i < bn; ++i) {
      delta_[b][i] = act_[b][i] > 0.0 ? trunk_delta_[b * bn + i] : 0.0;
    }
    accumulate_outer(layers_[b], delta_[b].data(), x.data() + b * stride, grad.data());
  }
  return y_hat;
}

Scaling fit_scaling(const Matrix& x, std::span<const double> y) {
  if (x.rows == 0 || y.size() != x.rows) throw DomainError("fit_scaling: empty or mismatched data");
  const auto n = static_cast<double>(x.rows);
  Scaling s;
  s.feature_mean.assign(x.cols, 0.0);
  s.feature_scale.assign(x.cols, 0.0);
  for (std::size_t r = 0; r < x.rows; ++r) {
    const auto row = x.row(r);
    for (std::size_t c = 0; c < x.cols; ++c) s.feature_mean[c] += row[c];
  }
  for (double& m : s.feature_mean) m /= n;
  for (std::size_t r = 0; r < x.rows; ++r) {
    const auto row = x.row(r);
    for (std::size_t c = 0; c < x.cols; ++c) {
      const double d = row[c] - s.feature_mean[c];
      s.feature_scale[c] += d * d;
    }
  }
  const auto usable = [](double sd, double mean) {
    return sd > 1e-12 * std::max(1.0, std::abs(mean)) ? sd : 1.0;
  };
  for (std::size_t c = 0; c < x.cols; ++c) {
    s.feature_scale[c] = usable(std::sqrt(s.feature_scale[c] / n), s.feature_mean[c]);
  }
  s.target_mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double var = 0.0;
  for (double v : y) var += (v - s.target_mean) * (v - s.target_mean);
  s.target_scale = usable(std::sqrt(var / n), s.target_mean);
  return s;
}

namespace {

Matrix standardized(const Scaling& s, const Matrix& x) {
  Matrix out(x.rows, x.cols);
  for (std::size_t r = 0; r < x.rows; ++r) s.standardize(x.row(r), out.row(r));
  return out;
}

}  // namespace

TrainResult train(const NetworkSpec& spec, const Matrix& x_train, std::span<const double> y_train,
                  const Matrix& x_val, std::span<const double> y_val, std::uint64_t seed,
                  const TrainOptions& options) {
  spec.validate();
  if (x_train.rows == 0) throw DomainError("train: empty training set");
  if (x_train.cols != spec.input_width() || (x_val.rows > 0 && x_val.cols != spec.input_width())) {
    throw DomainError("train: feature width does not match the network spec");
  }
  if (y_train.size() != x_train.rows || y_val.size() != x_val.rows) {
    throw DomainError("train: target count does not match sample count");
  }

  TrainResult result;
  NetworkWeights& w = result.weights;
  w = init_network(spec, derive_seed(seed, 0));
  w.meta.seed = seed;
  w.scaling = fit_scaling(x_train, y_train);
  const Matrix xs = standardized(w.scaling, x_train);
  const Matrix xv = standardized(w.scaling, x_val);
  std::vector<double> ys(y_train.size()), yv(y_val.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    ys[i] = (y_train[i] - w.scaling.target_mean) / w.scaling.target_scale;
  }
  for (std::size_t i = 0; i < yv.size(); ++i) {
    yv[i] = (y_val[i] - w.scaling.target_mean) / w.scaling.target_scale;
  }

  const std::size_t epochs = options.epochs.value_or(spec.epochs);
  const std::size_t np = w.params.size();
  std::vector<double> grad(np), m(np, 0.0), v(np, 0.0);
  std::vector<std::size_t> order(xs.rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 shuffle_rng(derive_seed(seed, 1));
  Evaluator ev(spec);
  double beta1_t = 1.0, beta2_t = 1.0;

  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    double sse = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t start = 0; start < order.size(); start += spec.batch_size, ++batch_index) {
      const std::size_t stop = std::min(order.size(), start + spec.batch_size);
      const double scale = 1.0 / static_cast<double>(stop - start);
      std::fill(grad.begin(), grad.end(), 0.0);
      double batch_sse = 0.0;
      for (std::size_t i = start; i < stop; ++i) {
        const std::size_t r = order[i];
        const double y_hat = ev.accumulate_gradient(w, xs.row(r), ys[r], scale, grad);
        batch_sse += (y_hat - ys[r]) * (y_hat - ys[r]);
      }
      if (!std::isfinite(batch_sse)) {
        throw NumericError("train: non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                           std::to_string(batch_index));
      }
      sse += batch_sse;
      beta1_t *= options.beta1;
      beta2_t *= options.beta2;
      const double lr_t = spec.learning_rate * std::sqrt(1.0 - beta2_t) / (1.0 - beta1_t);
      // Adam with bias correction folded into the step size.
      for (std::size_t j = 0; j < np; ++j) {
        m[j] = options.beta1 * m[j] + (1.0 - options.beta1) * grad[j];
        v[j] = options.beta2 * v[j] + (1.0 - options.beta2) * grad[j] * grad[j];
        w.params[j] -= lr_t * m[j] / (std::sqrt(v[j]) + options.epsilon * std::sqrt(1.0 - beta2_t));
      }
    }
    result.train_loss.push_back(sse / static_cast<double>(xs.rows));
    if (xv.rows > 0) {
      double vs = 0.0;
      for (std::size_t r = 0; r < xv.rows; ++r) {
        const double e = ev.forward(w, xv.row(r)) - yv[r];
        vs += e * e;
      }
      result.val_loss.push_back(vs / static_cast<double>(xv.rows));
    }
    if (options.on_epoch && !options.on_epoch(epoch + 1, w)) break;
  }
  w.meta.epochs_run = result.train_loss.size();
  w.meta.final_loss = result.train_loss.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                : result.train_loss.back();
  return result;
}

double predict(const NetworkWeights& w, std::span<const double> features) {
  if (w.scaling.empty()) throw DomainError("predict: network has no scaling constants");
  if (features.size() != w.spec.input_width()) throw DomainError("predict: feature width mismatch");
  std::vector<double> x(features.size());
  w.scaling.standardize(features, x);
  Evaluator ev(w.spec);
  return ev.forward(w, x) * w.scaling.target_scale + w.scaling.target_mean;
}

std::vector<double> predict(const NetworkWeights& w, const Matrix& features) {
  if (w.scaling.empty()) throw DomainError("predict: network has no scaling constants");
  if (features.cols != w.spec.input_width()) throw DomainError("predict: feature width mismatch");
  std::vector<double> out(features.rows);
  std::vector<double> x(features.cols);
  Evaluator ev(w.spec);
  for (std::size_t r = 0; r < features.rows; ++r) {
    w.scaling.standardize(features.row(r), x);
    out[r] = ev.forward(w, x) * w.scaling.target_scale + w.scaling.target_mean;
  }
  return out;
}

}  // namespace sawb
