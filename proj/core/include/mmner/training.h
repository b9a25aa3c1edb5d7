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

#ifndef MMNER_TRAINING_H_
#define MMNER_TRAINING_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mmner/eval.h"
#include "mmner/model.h"
#include "mmner/structured.h"
#include "mmner/tag_scheme.h"
#include "mmner/triggers.h"

namespace mmner {

struct TrainConfig {
  Trigger trigger;
  double learning_rate = 0.1;
  double decay = 0.95;
  double l2_lambda = 1e-6;
  int epochs = 20;
  int beam_k = 8;
  std::uint64_t seed = 1;
  int window = 5;

  void Validate() const;
  // Learning rate used throughout epoch `epoch` (0-based).
  double EpochLearningRate(int epoch) const;
};

struct LabeledInstance {
  EncodedSentence input;
  std::vector<int> gold;
};

// A candidate with its structured loss against the gold sequence.
struct AugmentedSequence {
  ScoredSequence sequence;  // score is the plain sentence score
  double delta = 0.0;

  double augmented_score() const { return sequence.score + delta; }
};

// argmax over label sequences of score + delta(gold, .).
//
// Hamming folds kappa * 1{label != gold} into the emissions and decodes
// exactly. FScore and Integrated rerank the beam candidates plus the gold
// sequence by score + delta; ties go to the lexicographically smaller
// sequence.
AugmentedSequence LossAugmentedPredict(const ScoreMatrix& emissions,
                                       const TransitionMatrix& transitions,
                                       std::span<const int> gold, const Trigger& trigger,
                                       int beam_k, const TagScheme& scheme);

struct InstanceResult {
  double loss = 0.0;  // q_i >= 0
  double gold_score = 0.0;
  AugmentedSequence prediction;
};

InstanceResult InstanceLoss(const ModelParams& params, const TagScheme& scheme,
                            const LabeledInstance& instance, const Trigger& trigger, int beam_k);

// Same as InstanceLoss and writes the subgradient of q_i (without the L2
// term) into `grads`.
InstanceResult InstanceLossAndGradient(const ModelParams& params, const TagScheme& scheme,
                                       const LabeledInstance& instance, const Trigger& trigger,
                                       int beam_k, Gradients& grads);

// Mean instance loss plus l2/2 * ||theta||^2.
double Objective(std::span<const LabeledInstance> dataset, const ModelParams& params,
                 const TagScheme& scheme, const TrainConfig& config);

// theta <- theta - lr * (g + l2 * theta) on every trainable tensor.
void SgdStep(ModelParams& params, const Gradients& grads, double learning_rate, double l2_lambda);

// Viterbi decode of one sentence.
std::vector<int> Decode(const ModelParams& params, const EncodedSentence& sentence);

struct EpochMetrics {
  int epoch = 0;  // 1-based
  double learning_rate = 0.0;
  double mean_loss = 0.0;
  bool has_dev = false;
  double dev_named_f1 = 0.0;
  double dev_nominal_f1 = 0.0;
  double dev_overall_f1 = 0.0;
};

// epoch, lr, mean q, dev named F1, dev nominal F1, dev overall F1, tab
// separated; dev columns are "-" without a dev set.
std::string FormatMetricsLine(const EpochMetrics& metrics);

struct TrainResult {
  ModelParams best;
  int best_epoch = 0;  // 1-based
  std::vector<EpochMetrics> log;
};

// Per-instance SGD over shuffled epochs. Keeps the parameters with the best
// dev overall F1 (earliest epoch on ties); without a dev set the last epoch
// is kept.
TrainResult Train(ModelParams params, const TagScheme& scheme,
                  std::span<const LabeledInstance> train, std::span<const LabeledInstance> dev,
                  const TrainConfig& config,
                  const std::function<void(const EpochMetrics&)>& on_epoch = {});

}  // namespace mmner

#endif  // MMNER_TRAINING_H_
