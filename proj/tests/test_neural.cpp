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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "sawb/common.hpp"
#include "sawb/neural.hpp"

namespace sawb {
namespace {

NetworkSpec tiny_spec(DofMask mask, std::size_t k, std::vector<std::size_t> trunk) {
  NetworkSpec s;
  s.mask = mask;
  s.k = k;
  s.branch_nodes = 3;
  s.trunk_layers = std::move(trunk);
  s.batch_size = 4;
  return s;
}

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = g(rng);
  return v;
}

Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Matrix m(r, c);
  m.data = random_vec(r * c, rng);
  return m;
}

TEST(NetworkSpec, StandardTable) {
  const NetworkSpec h = NetworkSpec::standard(DofMask::of({Dof::heave}), Target::hs);
  EXPECT_EQ(h.k, 30u);
  EXPECT_EQ(h.trunk_layers, (std::vector<std::size_t>{16, 8}));
  EXPECT_EQ(h.batch_size, 32u);
  EXPECT_EQ(h.input_width(), 62u);
  const NetworkSpec hp = NetworkSpec::standard(DofMask::of({Dof::heave, Dof::pitch}), Target::t1);
  EXPECT_EQ(hp.trunk_layers, (std::vector<std::size_t>{16, 8, 8}));
  EXPECT_EQ(hp.batch_size, 16u);
  const NetworkSpec a = NetworkSpec::standard(DofMask::all(), Target::hs);
  EXPECT_EQ(a.trunk_layers, (std::vector<std::size_t>{32, 32, 16}));
  EXPECT_EQ(a.batch_size, 16u);
  EXPECT_EQ(a.input_width(), 184u);
  EXPECT_EQ(a.trunk_input_width(), 3u * 17u + 1u);
  const NetworkSpec pm = NetworkSpec::standard(DofMask::of({Dof::pitch}), Target::mu);
  EXPECT_EQ(pm.k, 80u);
  EXPECT_EQ(pm.trunk_layers, (std::vector<std::size_t>{32, 16}));
  EXPECT_EQ(pm.batch_size, 16u);
  const NetworkSpec am = NetworkSpec::standard(DofMask::all(), Target::mu);
  EXPECT_EQ(am.trunk_layers, (std::vector<std::size_t>{32, 32, 16}));
  EXPECT_EQ(am.batch_size, 32u);
  EXPECT_EQ(am.input_width(), 484u);
  for (const NetworkSpec& s : {h, hp, a, pm, am}) {
    EXPECT_EQ(s.epochs, 100u);
    EXPECT_DOUBLE_EQ(s.learning_rate, 1e-3);
    EXPECT_EQ(s.branch_nodes, 16u);
    EXPECT_TRUE(s.matches_standard());
  }
}

TEST(NetworkWeights, LayoutIsContiguous) {
  const NetworkSpec s = NetworkSpec::standard(DofMask::of({Dof::heave, Dof::roll}), Target::hs);
  const auto layers = NetworkWeights::layout(s);
  ASSERT_EQ(layers.size(), 2u + 3u + 1u);
  EXPECT_EQ(layers[0].in, 60u);
  EXPECT_EQ(layers[0].out, 16u);
  EXPECT_EQ(layers[2].in, 2u * 17u + 1u);
  EXPECT_EQ(layers.back().out, 1u);
  std::size_t offset = 0;
  for (const LayerShape& l : layers) {
    EXPECT_EQ(l.offset, offset);
    offset = l.end();
  }
}

TEST(NetworkWeights, GlorotInit) {
  const NetworkSpec s = NetworkSpec::standard(DofMask::all(), Target::mu);
  const NetworkWeights w = init_network(s, 4);
  for (const LayerShape& l : w.layers) {
    const double bound = std::sqrt(6.0 / static_cast<double>(l.in + l.out));
    double sq = 0.0;
    for (std::size_t i = l.weights(); i < l.biases(); ++i) {
      ASSERT_LE(std::abs(w.params[i]), bound);
      sq += w.params[i] * w.params[i];
    }
    for (std::size_t i = l.biases(); i < l.end(); ++i) ASSERT_EQ(w.params[i], 0.0);
    if (l.in * l.out > 200) {
      const double var = sq / static_cast<double>(l.in * l.out);
      EXPECT_NEAR(var, bound * bound / 3.0, 0.2 * bound * bound / 3.0);
    }
  }
  EXPECT_EQ(init_network(s, 4).params, w.params);
  EXPECT_NE(init_network(s, 5).params, w.params);
}

TEST(Evaluator, HandComputedForward) {
  NetworkSpec s = tiny_spec(DofMask::of({Dof::heave}), 1, {1});
  s.branch_nodes = 1;
  NetworkWeights w = init_network(s, 1);
  const auto& L = w.layers;
  ASSERT_EQ(L.size(), 3u);
  // branch: relu(0.5 o - 1.0 f + 0.1)
  w.params[L[0].weights()] = 0.5;
  w.params[L[0].weights() + 1] = -1.0;
  w.params[L[0].biases()] = 0.1;
  // trunk hidden: relu(2 b + 3 m0 - 1 U + 0.2)
  w.params[L[1].weights()] = 2.0;
  w.params[L[1].weights() + 1] = 3.0;
  w.params[L[1].weights() + 2] = -1.0;
  w.params[L[1].biases()] = 0.2;
  // output: -1.5 h + 0.7
  w.params[L[2].weights()] = -1.5;
  w.params[L[2].biases()] = 0.7;
  Evaluator ev(s);
  const std::vector<double> x = {2.0, 0.4, 0.5, 1.0};  // o, f, m0, U
  const double b = std::max(0.0, 0.5 * 2.0 - 0.4 + 0.1);
  const double h = std::max(0.0, 2.0 * b + 3.0 * 0.5 - 1.0 + 0.2);
  EXPECT_NEAR(ev.forward(w, x), -1.5 * h + 0.7, 1e-14);
}

TEST(Evaluator, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(11);
  const NetworkSpec s = tiny_spec(DofMask::of({Dof::heave, Dof::roll}), 3, {5, 4});
  NetworkWeights w = init_network(s, 2);
  for (double& p : w.params) p += 0.05 * random_vec(1, rng)[0];
  const std::vector<double> x = random_vec(s.input_width(), rng);
  const double y = 0.3;
  Evaluator ev(s);
  std::vector<double> grad(w.params.size(), 0.0);
  ev.accumulate_gradient(w, x, y, 0.5, grad);
  const auto loss = [&](const std::vector<double>& p) {
    NetworkWeights c = w;
    c.params = p;
    Evaluator e(s);
    const double d = e.forward(c, x) - y;
    return 0.5 * d * d;
  };
  for (std::size_t i = 0; i < w.params.size(); ++i) {
    const double fd = oracle::central_difference(loss, w.params, i, 1e-6);
    EXPECT_NEAR(grad[i], fd, 1e-6 * (1.0 + std::abs(fd))) << "param " << i;
  }
}

TEST(Evaluator, GradientAccumulates) {
  std::mt19937_64 rng(3);
  const NetworkSpec s = tiny_spec(DofMask::of({Dof::pitch}), 2, {3});
  const NetworkWeights w = init_network(s, 2);
  const std::vector<double> x = random_vec(s.input_width(), rng);
  Evaluator ev(s);
  std::vector<double> g1(w.params.size(), 0.0), g2(w.params.size(), 0.0);
  ev.accumulate_gradient(w, x, 1.0, 1.0, g1);
  ev.accumulate_gradient(w, x, 1.0, 1.0, g2);
  ev.accumulate_gradient(w, x, 1.0, 1.0, g2);
  for (std::size_t i = 0; i < g1.size(); ++i) EXPECT_NEAR(g2[i], 2.0 * g1[i], 1e-14);
}

TEST(Scaling, FitsTrainingStatistics) {
  Matrix x(4, 2);
  x.data = {1.0, 5.0, 2.0, 5.0, 3.0, 5.0, 4.0, 5.0};
  const std::vector<double> y = {10.0, 20.0, 30.0, 40.0};
  const Scaling s = fit_scaling(x, y);
  EXPECT_DOUBLE_EQ(s.feature_mean[0], 2.5);
  EXPECT_NEAR(s.feature_scale[0], std::sqrt(1.25), 1e-15);
  EXPECT_DOUBLE_EQ(s.feature_scale[1], 1.0);
  EXPECT_DOUBLE_EQ(s.target_mean, 25.0);
  EXPECT_NEAR(s.target_scale, std::sqrt(125.0), 1e-12);
}

TEST(Train, LossDecreasesAndIsDeterministic) {
  std::mt19937_64 rng(8);
  NetworkSpec s = tiny_spec(DofMask::of({Dof::heave}), 4, {8});
  s.epochs = 60;
  const Matrix x = random_matrix(120, s.input_width(), rng);
  std::vector<double> y(120);
  for (std::size_t i = 0; i < 120; ++i) y[i] = 3.0 * x.row(i)[0] - x.row(i)[8] + 10.0;
  const Matrix xv = random_matrix(30, s.input_width(), rng);
  std::vector<double> yv(30);
  for (std::size_t i = 0; i < 30; ++i) yv[i] = 3.0 * xv.row(i)[0] - xv.row(i)[8] + 10.0;
  const TrainResult a = train(s, x, y, xv, yv, 99);
  ASSERT_EQ(a.train_loss.size(), 60u);
  ASSERT_EQ(a.val_loss.size(), 60u);
  EXPECT_LT(a.train_loss.back(), 0.2 * a.train_loss.front());
  EXPECT_LT(a.val_loss.back(), a.val_loss.front());
  const TrainResult b = train(s, x, y, xv, yv, 99);
  EXPECT_EQ(a.weights.params, b.weights.params);
  EXPECT_EQ(a.weights.meta.epochs_run, 60u);
  EXPECT_EQ(a.weights.meta.seed, 99u);
}

TEST(Train, EpochCallbackStopsEarly) {
  std::mt19937_64 rng(8);
  NetworkSpec s = tiny_spec(DofMask::of({Dof::heave}), 2, {4});
  s.epochs = 50;
  const Matrix x = random_matrix(16, s.input_width(), rng);
  const std::vector<double> y = random_vec(16, rng);
  std::vector<std::size_t> seen;
  TrainOptions opts;
  opts.on_epoch = [&](std::size_t epoch, const NetworkWeights& w) {
    EXPECT_FALSE(w.scaling.empty());
    seen.push_back(epoch);
    return epoch < 7;
  };
  const TrainResult r = train(s, x, y, Matrix{}, {}, 1, opts);
  EXPECT_EQ(seen, (std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7}));
  EXPECT_EQ(r.train_loss.size(), 7u);
  EXPECT_EQ(r.weights.meta.epochs_run, 7u);
  // The first epochs match an uninterrupted run.
  s.epochs = 7;
  EXPECT_EQ(train(s, x, y, Matrix{}, {}, 1).weights.params, r.weights.params);
}

TEST(Train, NonFiniteLossIsReported) {
  std::mt19937_64 rng(8);
  NetworkSpec s = tiny_spec(DofMask::of({Dof::heave}), 2, {4});
  s.learning_rate = 1e300;
  s.epochs = 20;
  const Matrix x = random_matrix(16, s.input_width(), rng);
  const std::vector<double> y = random_vec(16, rng);
  EXPECT_THROW(train(s, x, y, Matrix{}, {}, 1), NumericError);
}

TEST(Train, RejectsShapeMismatch) {
  std::mt19937_64 rng(8);
  const NetworkSpec s = tiny_spec(DofMask::of({Dof::heave}), 2, {4});
  const Matrix x = random_matrix(10, s.input_width() + 1, rng);
  const std::vector<double> y(10, 0.0);
  EXPECT_THROW(train(s, x, y, Matrix{}, {}, 1), DomainError);
}

TEST(Persistence, RoundTripPreservesPredictions) {
  std::mt19937_64 rng(21);
  NetworkSpec s = NetworkSpec::standard(DofMask::of({Dof::heave, Dof::pitch}), Target::t1);
  s.epochs = 3;
  const Matrix x = random_matrix(40, s.input_width(), rng);
  const std::vector<double> y = random_vec(40, rng);
  const TrainResult r = train(s, x, y, Matrix{}, {}, 5);
  const auto path = std::filesystem::temp_directory_path() / "sawb_roundtrip.model";
  save_weights(r.weights, path);
  const NetworkWeights back = load_weights(path);
  EXPECT_EQ(back.spec, r.weights.spec);
  EXPECT_EQ(back.params, r.weights.params);
  EXPECT_EQ(back.scaling.feature_scale, r.weights.scaling.feature_scale);
  EXPECT_EQ(back.meta.seed, 5u);
  EXPECT_EQ(predict(back, x), predict(r.weights, x));
  std::filesystem::remove(path);
}

TEST(Persistence, CorruptionDetected) {
  const NetworkSpec s = tiny_spec(DofMask::of({Dof::roll}), 2, {3});
  NetworkWeights w = init_network(s, 1);
  Matrix x(3, s.input_width());
  x.data.assign(x.data.size(), 1.0);
  w.scaling = fit_scaling(x, std::vector<double>{1.0, 2.0, 3.0});
  std::vector<std::uint8_t> bytes = encode_weights(w);
  EXPECT_NO_THROW(decode_weights(bytes, "ok"));

  auto bad = bytes;
  bad[0] = 'X';
  try {
    decode_weights(bad, "models/a.model");
    FAIL() << "bad magic accepted";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("models/a.model"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("magic"), std::string::npos);
  }
  bad = bytes;
  bad.resize(bytes.size() - 5);
  EXPECT_THROW(decode_weights(bad, "t"), IoError);
  bad = bytes;
  bad.push_back(0);
  EXPECT_THROW(decode_weights(bad, "t"), IoError);
  bad = bytes;
  bad[4] = 99;  // version
  EXPECT_THROW(decode_weights(bad, "t"), IoError);
  EXPECT_THROW(load_weights("/nonexistent/dir/x.model"), IoError);
}

}  // namespace
}  // namespace sawb
