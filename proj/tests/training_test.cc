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

#include "mmner/training.h"

#include <gtest/gtest.h>

#include <cmath>

#include "mmner/error.h"
#include "mmner/eval.h"
#include "support/fixtures.h"
#include "support/oracles.h"

namespace mmner {
namespace {

using testing::OracleLossAugmented;
using testing::RandomLogEmissions;
using testing::RandomTransitions;

TagScheme SchemeWithLabels(int num_labels) {
  // 1, 3 or 5 labels: O plus B/I pairs.
  std::vector<EntityType> types;
  for (int k = 0; k < (num_labels - 1) / 2; ++k) types.push_back({"T" + std::to_string(k), ""});
  return TagScheme(types);
}

std::vector<int> RandomGold(int n, const TagScheme& scheme, Rng& rng) {
  std::uniform_int_distribution<int> label(0, scheme.num_labels() - 1);
  std::vector<int> gold(n);
  for (auto& l : gold) l = label(rng);
  RepairBio(gold, scheme);
  return gold;
}

void ExpectMatchesOracle(const Trigger& trigger, int max_len, int beam_k, std::uint64_t seed,
                         int trials) {
  Rng rng(seed);
  std::uniform_int_distribution<int> len(1, max_len), labels_choice(0, 1);
  for (int trial = 0; trial < trials; ++trial) {
    const int n = len(rng);
    TagScheme scheme = SchemeWithLabels(labels_choice(rng) ? 3 : 1);
    const int y = scheme.num_labels();
    Eigen::MatrixXd e = RandomLogEmissions(n, y, rng);
    TransitionMatrix a{RandomTransitions(y, rng)};
    auto gold = RandomGold(n, scheme, rng);
    auto got = LossAugmentedPredict(e, a, gold, trigger, beam_k, scheme);
    auto want = OracleLossAugmented(e, a.scores, [&](std::span<const int> l) {
      return trigger.Delta(gold, l, scheme);
    });
    EXPECT_EQ(got.sequence.labels, want.labels) << "trial " << trial;
    EXPECT_NEAR(got.augmented_score(), want.score, 1e-9);
    EXPECT_NEAR(got.sequence.score, SentenceScore(e, a, got.sequence.labels), 1e-9);
    EXPECT_NEAR(got.delta, trigger.Delta(gold, got.sequence.labels, scheme), 1e-12);
  }
}

TEST(LossAugmentedPredictTest, HammingMatchesBruteForce) {
  ExpectMatchesOracle({TriggerKind::kHamming, 0.5, 0.0}, 6, 1, 11, 200);
}

TEST(LossAugmentedPredictTest, FScoreWithExhaustiveBeamMatchesBruteForce) {
  ExpectMatchesOracle({TriggerKind::kFScore, 0.7, 0.0}, 4, 81, 12, 200);
}

TEST(LossAugmentedPredictTest, IntegratedWithExhaustiveBeamMatchesBruteForce) {
  ExpectMatchesOracle({TriggerKind::kIntegrated, 0.7, 0.5}, 4, 81, 13, 200);
}

TEST(LossAugmentedPredictTest, ZeroKappaGivesViterbi) {
  Rng rng(4);
  TagScheme scheme = SchemeWithLabels(5);
  for (auto kind : {TriggerKind::kHamming, TriggerKind::kFScore, TriggerKind::kIntegrated}) {
    for (int trial = 0; trial < 30; ++trial) {
      Eigen::MatrixXd e = RandomLogEmissions(6, 5, rng);
      TransitionMatrix a{RandomTransitions(5, rng)};
      auto gold = RandomGold(6, scheme, rng);
      auto got = LossAugmentedPredict(e, a, gold, Trigger{kind, 0.0, 0.0}, 8, scheme);
      auto viterbi = Viterbi(e, a);
      EXPECT_NEAR(got.augmented_score(), viterbi.score, 1e-12);
      if (got.sequence.labels != gold) {
        EXPECT_EQ(got.sequence.labels, viterbi.labels);
      }
    }
  }
}

TEST(LossAugmentedPredictTest, GoldAlwaysCompetes) {
  // With a beam of one the gold sequence still bounds the augmented max.
  Rng rng(6);
  TagScheme scheme = SchemeWithLabels(5);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd e = RandomLogEmissions(7, 5, rng);
    TransitionMatrix a{RandomTransitions(5, rng)};
    auto gold = RandomGold(7, scheme, rng);
    for (auto kind : {TriggerKind::kHamming, TriggerKind::kFScore, TriggerKind::kIntegrated}) {
      auto got = LossAugmentedPredict(e, a, gold, Trigger{kind, 0.2, 0.2}, 1, scheme);
      EXPECT_GE(got.augmented_score(), SentenceScore(e, a, gold));
    }
  }
}

double InstanceQ(const Eigen::MatrixXd& e, const std::vector<int>& gold, const Trigger& t,
                 const TagScheme& scheme) {
  TransitionMatrix a = TransitionMatrix::Zeros(static_cast<int>(e.cols()));
  auto pred = LossAugmentedPredict(e, a, gold, t, 8, scheme);
  return pred.augmented_score() - SentenceScore(e, a, gold);
}

TEST(InstanceLossTest, HandExamples) {
  TagScheme scheme = SchemeWithLabels(3);
  Trigger hamming{TriggerKind::kHamming, 0.2, 0.0};
  Eigen::MatrixXd confident(1, 3), tied(1, 3);
  confident << std::log(0.9), std::log(0.1), std::log(1e-9);
  tied << std::log(0.5), std::log(0.5), std::log(1e-9);
  EXPECT_DOUBLE_EQ(InstanceQ(confident, {0}, hamming, scheme), 0.0);
  EXPECT_NEAR(InstanceQ(tied, {0}, hamming, scheme), 0.2, 1e-12);
}

TEST(InstanceLossTest, ModelLossIsNonNegativeAndZeroGradientAtGold) {
  testing::Setup setup = testing::MakeSetup(10, {}, {8, 4, 6}, 3);
  for (auto kind : {TriggerKind::kHamming, TriggerKind::kFScore, TriggerKind::kIntegrated}) {
    Trigger t{kind, 0.2, 0.2};
    for (const auto& inst : setup.instances) {
      Gradients g = Gradients::Zeros(setup.params);
      auto r = InstanceLossAndGradient(setup.params, setup.scheme, inst, t, 4, g);
      EXPECT_GE(r.loss, 0.0);
      EXPECT_EQ(r.loss == 0.0, r.prediction.sequence.labels == inst.gold);
      auto plain = InstanceLoss(setup.params, setup.scheme, inst, t, 4);
      EXPECT_EQ(plain.loss, r.loss);
      if (r.prediction.sequence.labels == inst.gold) {
        for (const auto& m : g.Densify(setup.params)) EXPECT_EQ(m.squaredNorm(), 0.0);
      }
    }
  }
}

TEST(InstanceLossTest, MissingGoldIsAnError) {
  testing::Setup setup = testing::MakeSetup(2, {}, {4, 4, 4}, 3);
  LabeledInstance bad = setup.instances[0];
  bad.gold.clear();
  EXPECT_THROW(InstanceLoss(setup.params, setup.scheme, bad, Trigger{}, 4), Error);
}

ModelParams UniformModel(testing::Setup& setup) {
  ModelParams p = setup.params;
  for (auto& view : Tensors(p)) {
    for (Eigen::Index i = 0; i < view.size(); ++i) view.data[i] = 0.0;
  }
  return p;
}

TEST(ObjectiveTest, Examples) {
  testing::Setup setup = testing::MakeSetup(4, {}, {4, 4, 4}, 5);
  ModelParams p = UniformModel(setup);
  TrainConfig config;
  config.trigger = {TriggerKind::kHamming, 0.0, 0.0};
  config.l2_lambda = 0.0;
  EXPECT_EQ(Objective(setup.instances, p, setup.scheme, config), 0.0);

  // Zero projection keeps the emissions uniform, so q stays 0.
  p.token_table.vectors(2, 0) = 2.0;
  config.l2_lambda = 0.5;
  EXPECT_DOUBLE_EQ(Objective(setup.instances, p, setup.scheme, config), 1.0);

  EXPECT_THROW(Objective(std::span<const LabeledInstance>(), p, setup.scheme, config), Error);
}

TEST(SgdStepTest, Examples) {
  testing::Setup setup = testing::MakeSetup(2, {}, {4, 4, 4}, 5);
  ModelParams p = setup.params;
  p.transitions.scores(0, 0) = 1.0;
  Gradients g = Gradients::Zeros(p);
  SgdStep(p, g, 0.1, 1e-6);
  EXPECT_DOUBLE_EQ(p.transitions.scores(0, 0), 0.9999999);

  p.transitions.scores(0, 0) = 1.0;
  g.transitions(0, 0) = 2.0;
  SgdStep(p, g, 0.1, 0.0);
  EXPECT_DOUBLE_EQ(p.transitions.scores(0, 0), 0.8);
}

TEST(SgdStepTest, ZeroLearningRateIsBitExactNoop) {
  testing::Setup setup = testing::MakeSetup(6, {}, {4, 4, 4}, 5);
  ModelParams p = setup.params;
  Gradients g = Gradients::Zeros(p);
  InstanceLossAndGradient(p, setup.scheme, setup.instances[0], Trigger{}, 4, g);
  ModelParams before = p;
  SgdStep(p, g, 0.0, 1e-6);
  auto a = Tensors(before), b = Tensors(p);
  for (size_t i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < a[i].size(); ++j) ASSERT_EQ(a[i].data[j], b[i].data[j]);
  }
}

TEST(SgdStepTest, ShapeMismatchIsAnError) {
  testing::Setup setup = testing::MakeSetup(2, {}, {4, 4, 4}, 5);
  ModelParams p = setup.params;
  Gradients g = Gradients::Zeros(p);
  g.transitions = Eigen::MatrixXd::Zero(2, 2);
  EXPECT_THROW(SgdStep(p, g, 0.1, 0.0), ShapeError);
}

TEST(TrainConfigTest, Validation) {
  TrainConfig c;
  EXPECT_NO_THROW(c.Validate());
  EXPECT_DOUBLE_EQ(c.EpochLearningRate(2), 0.1 * 0.95 * 0.95);
  for (auto mutate : std::vector<std::function<void(TrainConfig&)>>{
           [](TrainConfig& x) { x.learning_rate = 0; },
           [](TrainConfig& x) { x.decay = 0; },
           [](TrainConfig& x) { x.decay = 1.5; },
           [](TrainConfig& x) { x.l2_lambda = -1; },
           [](TrainConfig& x) { x.epochs = 0; },
           [](TrainConfig& x) { x.beam_k = 0; }}) {
    TrainConfig bad;
    mutate(bad);
    EXPECT_THROW(bad.Validate(), InputError);
  }
}

TEST(TrainTest, ObjectiveDecreasesOnSmallCorpus) {
  testing::Setup setup = testing::MakeSetup(10, {}, {8, 4, 8}, 21);
  TrainConfig config;
  config.epochs = 5;
  const double before = Objective(setup.instances, setup.params, setup.scheme, config);
  auto result = Train(setup.params, setup.scheme, setup.instances, {}, config);
  const double after = Objective(setup.instances, result.best, setup.scheme, config);
  EXPECT_LT(after, before);
  EXPECT_EQ(result.best_epoch, 5);
  ASSERT_EQ(result.log.size(), 5u);
  EXPECT_FALSE(result.log[0].has_dev);
}

TEST(TrainTest, DeterministicAndConstantRateWithoutDecay) {
  testing::Setup setup = testing::MakeSetup(8, {}, {6, 4, 6}, 22);
  TrainConfig config;
  config.epochs = 3;
  config.decay = 1.0;
  auto a = Train(setup.params, setup.scheme, setup.instances, setup.instances, config);
  auto b = Train(setup.params, setup.scheme, setup.instances, setup.instances, config);
  ASSERT_EQ(a.log.size(), b.log.size());
  for (size_t i = 0; i < a.log.size(); ++i) {
    EXPECT_EQ(FormatMetricsLine(a.log[i]), FormatMetricsLine(b.log[i]));
    EXPECT_EQ(a.log[i].learning_rate, 0.1);
    EXPECT_TRUE(a.log[i].has_dev);
  }
  auto ta = Tensors(a.best), tb = Tensors(b.best);
  for (size_t i = 0; i < ta.size(); ++i) {
    for (Eigen::Index j = 0; j < ta[i].size(); ++j) ASSERT_EQ(ta[i].data[j], tb[i].data[j]);
  }
}

TEST(TrainTest, KeepsBestDevEpoch) {
  testing::Setup setup = testing::MakeSetup(8, {}, {6, 4, 6}, 23);
  TrainConfig config;
  config.epochs = 4;
  auto result = Train(setup.params, setup.scheme, setup.instances, setup.instances, config);
  double best = -1;
  int best_epoch = 0;
  for (const auto& m : result.log) {
    if (m.dev_overall_f1 > best) {
      best = m.dev_overall_f1;
      best_epoch = m.epoch;
    }
  }
  EXPECT_EQ(result.best_epoch, best_epoch);
  std::vector<std::vector<int>> gold, pred;
  for (const auto& inst : setup.instances) {
    gold.push_back(inst.gold);
    pred.push_back(Decode(result.best, inst.input));
  }
  EXPECT_DOUBLE_EQ(EvaluateLabels(gold, pred, setup.scheme).overall_f1, best);
}

TEST(TrainTest, EmptyTrainSetIsAnError) {
  testing::Setup setup = testing::MakeSetup(2, {}, {4, 4, 4}, 5);
  EXPECT_THROW(Train(setup.params, setup.scheme, {}, {}, TrainConfig{}), InputError);
}

TEST(MetricsLineTest, Format) {
  EpochMetrics m{1, 0.1, 0.25, false, 0, 0, 0};
  EXPECT_EQ(FormatMetricsLine(m), "1\t0.1\t0.250000\t-\t-\t-");
  m.has_dev = true;
  m.dev_named_f1 = 0.5;
  m.dev_nominal_f1 = 0.25;
  m.dev_overall_f1 = 0.375;
  EXPECT_EQ(FormatMetricsLine(m), "1\t0.1\t0.250000\t0.500000\t0.250000\t0.375000");
}

}  // namespace
}  // namespace mmner
