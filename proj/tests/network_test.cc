// Copyright 2026 The mmner Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mmner/network.h"

#include <gtest/gtest.h>

#include <cmath>

#include "mmner/error.h"
#include "mmner/model.h"

namespace mmner {
namespace {

double RelErr(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-3});
}

Eigen::VectorXd RandomVector(int n, Rng& rng) {
  Eigen::VectorXd v(n);
  FillUniform(v, 1.0, rng);
  return v;
}

TEST(LstmCellTest, ZeroWeightsFixedPoint) {
  LstmParams p = LstmParams::Zeros(3, 2);
  Eigen::VectorXd x = Eigen::Vector3d(1, -2, 3);
  LstmState s = LstmCell(x, Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero(), p);
  EXPECT_TRUE(s.h.isZero(0.0));
  EXPECT_TRUE(s.c.isZero(0.0));

  LstmState t = LstmCell(x, Eigen::Vector2d::Zero(), Eigen::Vector2d(1.0, -2.0), p);
  EXPECT_DOUBLE_EQ(t.c[0], 0.5);
  EXPECT_DOUBLE_EQ(t.c[1], -1.0);
  EXPECT_DOUBLE_EQ(t.h[0], 0.5 * std::tanh(0.5));
  EXPECT_DOUBLE_EQ(t.h[1], 0.5 * std::tanh(-1.0));
}

TEST(LstmCellTest, ScalarHandComputation) {
  // x = 0.5, h_prev = -0.3, c_prev = 0.2; expected values evaluated by hand
  // from the LSTM cell formulas.
  LstmParams p = LstmParams::Zeros(1, 1);
  p.w_input << 0.4, -0.2;
  p.b_input << 0.1;
  p.w_forget << -0.3, 0.5;
  p.b_forget << 0.2;
  p.w_output << 0.7, 0.1;
  p.b_output << -0.1;
  p.w_cell << 0.6, -0.4;
  p.b_cell << 0.05;
  LstmState s = LstmCell(Eigen::VectorXd::Constant(1, 0.5), Eigen::VectorXd::Constant(1, -0.3),
                         Eigen::VectorXd::Constant(1, 0.2), p);
  EXPECT_NEAR(s.h[0], 0.1881482411017591, 1e-15);
  EXPECT_NEAR(s.c[0], 0.3531212771175152, 1e-15);
}

TEST(LstmCellTest, DimensionMismatch) {
  LstmParams p = LstmParams::Zeros(3, 2);
  EXPECT_THROW(LstmCell(Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero(),
                        p),
               ShapeError);
}

// Loss = a.h + b.c; checks every cell gradient against central differences.
TEST(LstmCellTest, GradientMatchesFiniteDifferences) {
  constexpr double kEps = 1e-4;
  for (int seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    const int in = 3, hid = 2;
    LstmParams p = LstmParams::Random(in, hid, rng);
    FillUniform(p.b_input, 0.5, rng);
    FillUniform(p.b_forget, 0.5, rng);
    Eigen::VectorXd x = RandomVector(in, rng), h0 = RandomVector(hid, rng),
                    c0 = RandomVector(hid, rng), a = RandomVector(hid, rng),
                    b = RandomVector(hid, rng);
    auto loss = [&](const Eigen::VectorXd& xx, const Eigen::VectorXd& hh,
                    const Eigen::VectorXd& cc) {
      LstmState s = LstmCell(xx, hh, cc, p);
      return a.dot(s.h) + b.dot(s.c);
    };

    LstmParams grads = LstmParams::Zeros(in, hid);
    LstmCellGrads g = LstmCellBackward(LstmCellForward(x, h0, c0, p), a, b, p, grads);

    auto check_vector = [&](Eigen::VectorXd& v, const Eigen::VectorXd& analytic) {
      for (int i = 0; i < v.size(); ++i) {
        const double saved = v[i];
        v[i] = saved + kEps;
        const double up = loss(x, h0, c0);
        v[i] = saved - kEps;
        const double down = loss(x, h0, c0);
        v[i] = saved;
        EXPECT_LT(RelErr(analytic[i], (up - down) / (2 * kEps)), 1e-4);
      }
    };
    check_vector(x, g.x);
    check_vector(h0, g.h_prev);
    check_vector(c0, g.c_prev);

    auto check_matrix = [&](Eigen::MatrixXd& m, const Eigen::MatrixXd& analytic) {
      for (Eigen::Index i = 0; i < m.size(); ++i) {
        const double saved = m.data()[i];
        m.data()[i] = saved + kEps;
        const double up = loss(x, h0, c0);
        m.data()[i] = saved - kEps;
        const double down = loss(x, h0, c0);
        m.data()[i] = saved;
        EXPECT_LT(RelErr(analytic.data()[i], (up - down) / (2 * kEps)), 1e-4);
      }
    };
    check_matrix(p.w_input, grads.w_input);
    check_matrix(p.w_forget, grads.w_forget);
    check_matrix(p.w_output, grads.w_output);
    check_matrix(p.w_cell, grads.w_cell);
    check_vector(p.b_input, grads.b_input);
    check_vector(p.b_forget, grads.b_forget);
    check_vector(p.b_output, grads.b_output);
    check_vector(p.b_cell, grads.b_cell);
  }
}

BiLstmParams RandomBiLstm(int in, int hid, Rng& rng) {
  return {LstmParams::Random(in, hid, rng), LstmParams::Random(in, hid, rng)};
}

TEST(BiLstmTest, SingleStep) {
  Rng rng(4);
  BiLstmParams p = RandomBiLstm(3, 2, rng);
  std::vector<Eigen::VectorXd> xs = {RandomVector(3, rng)};
  auto h = BiLstmForward(xs, p);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0].head(2), LstmCell(xs[0], zero, zero, p.forward).h);
  EXPECT_EQ(h[0].tail(2), LstmCell(xs[0], zero, zero, p.backward).h);
}

TEST(BiLstmTest, ReversalSwapsDirections) {
  Rng rng(5);
  BiLstmParams p = RandomBiLstm(3, 2, rng);
  BiLstmParams swapped{p.backward, p.forward};
  std::vector<Eigen::VectorXd> xs;
  for (int t = 0; t < 4; ++t) xs.push_back(RandomVector(3, rng));
  std::vector<Eigen::VectorXd> reversed(xs.rbegin(), xs.rend());
  auto h = BiLstmForward(xs, p);
  auto hr = BiLstmForward(reversed, swapped);
  for (int t = 0; t < 4; ++t) {
    EXPECT_EQ(h[t].head(2), hr[3 - t].tail(2));
    EXPECT_EQ(h[t].tail(2), hr[3 - t].head(2));
  }
}

TEST(BiLstmTest, MatchesManualUnrolling) {
  Rng rng(6);
  BiLstmParams p = RandomBiLstm(2, 3, rng);
  std::vector<Eigen::VectorXd> xs = {RandomVector(2, rng), RandomVector(2, rng),
                                     RandomVector(2, rng)};
  auto h = BiLstmForward(xs, p);
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(3);
  LstmState f1 = LstmCell(xs[0], z, z, p.forward);
  LstmState f2 = LstmCell(xs[1], f1.h, f1.c, p.forward);
  LstmState f3 = LstmCell(xs[2], f2.h, f2.c, p.forward);
  LstmState b3 = LstmCell(xs[2], z, z, p.backward);
  LstmState b2 = LstmCell(xs[1], b3.h, b3.c, p.backward);
  LstmState b1 = LstmCell(xs[0], b2.h, b2.c, p.backward);
  EXPECT_EQ(h[0].head(3), f1.h);
  EXPECT_EQ(h[1].head(3), f2.h);
  EXPECT_EQ(h[2].head(3), f3.h);
  EXPECT_EQ(h[0].tail(3), b1.h);
  EXPECT_EQ(h[1].tail(3), b2.h);
  EXPECT_EQ(h[2].tail(3), b3.h);
}

TEST(BiLstmTest, DeterministicAndRejectsEmpty) {
  Rng rng(7);
  BiLstmParams p = RandomBiLstm(2, 2, rng);
  std::vector<Eigen::VectorXd> xs = {RandomVector(2, rng), RandomVector(2, rng)};
  auto a = BiLstmForward(xs, p);
  auto b = BiLstmForward(xs, p);
  for (size_t t = 0; t < a.size(); ++t) EXPECT_EQ(a[t], b[t]);
  EXPECT_THROW(BiLstmForward(std::vector<Eigen::VectorXd>{}, p), ShapeError);
}

TEST(EmissionsTest, UniformWhenWeightsZero) {
  ProjectionParams proj{Eigen::MatrixXd::Zero(4, 6), Eigen::VectorXd::Zero(4)};
  Rng rng(1);
  std::vector<Eigen::VectorXd> h = {RandomVector(6, rng), RandomVector(6, rng)};
  EmissionMatrix y = Emissions(h, proj);
  for (int t = 0; t < 2; ++t) {
    for (int j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(y.probs(t, j), 0.25);
  }
  EXPECT_NEAR(LabelScore(y, 0, 0), -std::log(4.0), 1e-15);
}

TEST(EmissionsTest, BiasOnly) {
  ProjectionParams proj{Eigen::MatrixXd::Zero(2, 2), Eigen::Vector2d(std::log(2.0), 0.0)};
  std::vector<Eigen::VectorXd> h = {Eigen::Vector2d(3, -1)};
  EmissionMatrix y = Emissions(h, proj);
  EXPECT_NEAR(y.probs(0, 0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(y.probs(0, 1), 1.0 / 3.0, 1e-15);
}

TEST(EmissionsTest, ShiftInvariantAndStable) {
  Eigen::MatrixXd logits(2, 3);
  logits << 0.1, -2.0, 1.5, 3.0, 3.0, -7.0;
  EmissionMatrix a = EmissionMatrix::FromLogits(logits);
  EmissionMatrix b = EmissionMatrix::FromLogits((logits.array() + 1000.0).matrix());
  EXPECT_TRUE(a.probs.isApprox(b.probs, 1e-12));
  EXPECT_TRUE(b.probs.allFinite());
}

TEST(EmissionsTest, RowsSumToOne) {
  for (int seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    ProjectionParams proj{Eigen::MatrixXd(5, 4), Eigen::VectorXd(5)};
    FillUniform(proj.weight, 20.0, rng);
    FillUniform(proj.bias, 20.0, rng);
    std::vector<Eigen::VectorXd> h = {RandomVector(4, rng), RandomVector(4, rng)};
    EmissionMatrix y = Emissions(h, proj);
    for (int t = 0; t < 2; ++t) {
      EXPECT_NEAR(y.probs.row(t).sum(), 1.0, 1e-9);
      EXPECT_TRUE(y.log_probs.row(t).allFinite());
    }
  }
}

TEST(LabelScoreTest, Values) {
  Eigen::MatrixXd probs(1, 2);
  probs << 0.5, 1.0 - 1e-12;
  EmissionMatrix y = EmissionMatrix::FromProbabilities(probs);
  EXPECT_NEAR(LabelScore(y, 0, 0), -0.6931471805599453, 1e-15);
  EXPECT_NEAR(LabelScore(y, 0, 1), 0.0, 1e-11);
  EXPECT_LT(LabelScore(y, 0, 1), 0.0);
}

ModelParams TinyModel(Rng& rng) {
  FeatureConfig fc{Representation::kSegFeatures, true, 3};
  std::vector<Sentence> corpus = {SentenceFromWords(std::vector<std::string>{"ab", "c"})};
  Featurizer f = Featurizer::Fit(fc, corpus, 1);
  return ModelParams::Initialize(f, TagScheme(std::vector<EntityType>{{"X", ""}}),
                                 ModelDims{2, 2, 3}, rng);
}

TEST(ModelBackwardTest, ZeroUpstreamGivesZeroGradients) {
  Rng rng(9);
  ModelParams params = TinyModel(rng);
  EncodedSentence s{{2, 3, 4}, std::vector<std::vector<int>>(3, std::vector<int>(6, 2))};
  ForwardCache cache = Forward(params, s);
  Gradients g = Backward(params, cache, Eigen::MatrixXd::Zero(3, 3), Eigen::MatrixXd::Zero(4, 3));
  for (const auto& m : g.Densify(params)) EXPECT_TRUE(m.isZero(0.0));
}

TEST(ModelBackwardTest, RejectsMissingOrStaleCache) {
  Rng rng(9);
  ModelParams params = TinyModel(rng);
  EncodedSentence s{{2}, {std::vector<int>(6, 2)}};
  EXPECT_THROW(Backward(params, ForwardCache{}, Eigen::MatrixXd::Zero(1, 3),
                        Eigen::MatrixXd::Zero(4, 3)),
               Error);
  ForwardCache cache = Forward(params, s);
  ++params.generation;
  EXPECT_THROW(Backward(params, cache, Eigen::MatrixXd::Zero(1, 3), Eigen::MatrixXd::Zero(4, 3)),
               Error);
}

}  // namespace
}  // namespace mmner
