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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "mmner/error.h"

namespace mmner {
namespace {

constexpr std::uint64_t kShuffleStream = 0x9E3779B97F4A7C15ULL;

void CheckGold(std::span<const int> gold, const ScoreMatrix& emissions) {
  if (static_cast<Eigen::Index>(gold.size()) != emissions.rows()) {
    throw InputError("loss-augmented inference needs gold labels for every position");
  }
}

void CheckShape(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string("sgd step: gradient shape mismatch for ") + what);
  }
}

void Update(Eigen::MatrixXd& theta, const Eigen::MatrixXd& g, double lr, double l2,
            const char* what) {
  CheckShape(theta, g, what);
  theta = theta - lr * (g + l2 * theta);
}

void Update(Eigen::VectorXd& theta, const Eigen::VectorXd& g, double lr, double l2,
            const char* what) {
  if (theta.size() != g.size()) {
    throw ShapeError(std::string("sgd step: gradient shape mismatch for ") + what);
  }
  theta = theta - lr * (g + l2 * theta);
}

void Update(LstmParams& p, const LstmParams& g, double lr, double l2) {
  Update(p.w_input, g.w_input, lr, l2, "lstm w_input");
  Update(p.w_forget, g.w_forget, lr, l2, "lstm w_forget");
  Update(p.w_output, g.w_output, lr, l2, "lstm w_output");
  Update(p.w_cell, g.w_cell, lr, l2, "lstm w_cell");
  Update(p.b_input, g.b_input, lr, l2, "lstm b_input");
  Update(p.b_forget, g.b_forget, lr, l2, "lstm b_forget");
  Update(p.b_output, g.b_output, lr, l2, "lstm b_output");
  Update(p.b_cell, g.b_cell, lr, l2, "lstm b_cell");
}

void Update(EmbeddingTable& table, const SparseRows& rows, double lr, double l2) {
  if (!table.trainable) return;
  std::vector<std::pair<int, Eigen::RowVectorXd>> touched;
  touched.reserve(rows.size());
  for (const auto& [index, g] : rows) {
    if (index < 0 || index >= table.size() || g.size() != table.dim()) {
      throw ShapeError("sgd step: embedding gradient row out of shape");
    }
    const Eigen::RowVectorXd theta = table.vectors.row(index);
    touched.emplace_back(index, theta - lr * (g.transpose() + l2 * theta));
  }
  if (l2 != 0.0) table.vectors = table.vectors - lr * (l2 * table.vectors);
  for (auto& [index, row] : touched) table.vectors.row(index) = row;
}

}  // namespace

void TrainConfig::Validate() const {
  trigger.Validate();
  if (!(learning_rate > 0)) throw InputError("learning rate must be positive");
  if (!(decay > 0 && decay <= 1)) throw InputError("decay must lie in (0, 1]");
  if (!(l2_lambda >= 0)) throw InputError("l2 lambda must be non-negative");
  if (epochs < 1) throw InputError("epochs must be at least 1");
  if (beam_k < 1) throw InputError("beam width must be at least 1");
  if (window < 1 || window % 2 == 0) throw InputError("window must be a positive odd number");
}

double TrainConfig::EpochLearningRate(int epoch) const {
  return learning_rate * std::pow(decay, epoch);
}

AugmentedSequence LossAugmentedPredict(const ScoreMatrix& emissions,
                                       const TransitionMatrix& transitions,
                                       std::span<const int> gold, const Trigger& trigger,
                                       int beam_k, const TagScheme& scheme) {
  CheckGold(gold, emissions);
  AugmentedSequence gold_candidate;
  gold_candidate.sequence.labels.assign(gold.begin(), gold.end());
  gold_candidate.sequence.score = SentenceScore(emissions, transitions, gold);
  gold_candidate.delta = 0.0;

  auto make = [&](std::vector<int> labels) {
    AugmentedSequence c;
    c.sequence.score = SentenceScore(emissions, transitions, labels);
    c.delta = trigger.Delta(gold, labels, scheme);
    c.sequence.labels = std::move(labels);
    return c;
  };
  auto better = [](const AugmentedSequence& a, const AugmentedSequence& b) {
    if (a.augmented_score() != b.augmented_score()) {
      return a.augmented_score() > b.augmented_score();
    }
    return a.sequence.labels < b.sequence.labels;
  };

  if (trigger.decomposable()) {
    ScoreMatrix augmented = emissions;
    for (Eigen::Index t = 0; t < augmented.rows(); ++t) {
      for (Eigen::Index j = 0; j < augmented.cols(); ++j) {
        if (j != gold[t]) augmented(t, j) += trigger.kappa;
      }
    }
    AugmentedSequence best = make(Viterbi(augmented, transitions).labels);
    // Gold competes as a candidate as well.
    return gold_candidate.augmented_score() > best.augmented_score() ? gold_candidate : best;
  }

  AugmentedSequence best = gold_candidate;
  for (auto& candidate : BeamTopK(emissions, transitions, beam_k)) {
    AugmentedSequence c = make(std::move(candidate.labels));
    if (better(c, best)) best = std::move(c);
  }
  return best;
}

namespace {

InstanceResult Score(const ForwardCache& cache, const ModelParams& params,
                     const TagScheme& scheme, const LabeledInstance& instance,
                     const Trigger& trigger, int beam_k) {
  const ScoreMatrix& emissions = cache.emissions.log_probs;
  InstanceResult result;
  result.prediction = LossAugmentedPredict(emissions, params.transitions, instance.gold, trigger,
                                           beam_k, scheme);
  result.gold_score = SentenceScore(emissions, params.transitions, instance.gold);
  result.loss = result.prediction.sequence.labels == instance.gold
                    ? 0.0
                    : result.prediction.augmented_score() - result.gold_score;
  return result;
}

}  // namespace

InstanceResult InstanceLoss(const ModelParams& params, const TagScheme& scheme,
                            const LabeledInstance& instance, const Trigger& trigger, int beam_k) {
  if (instance.gold.size() != instance.input.tokens.size()) {
    throw InputError("instance loss requires gold labels for every token");
  }
  const ForwardCache cache = Forward(params, instance.input);
  return Score(cache, params, scheme, instance, trigger, beam_k);
}

InstanceResult InstanceLossAndGradient(const ModelParams& params, const TagScheme& scheme,
                                       const LabeledInstance& instance, const Trigger& trigger,
                                       int beam_k, Gradients& grads) {
  if (instance.gold.size() != instance.input.tokens.size()) {
    throw InputError("instance loss requires gold labels for every token");
  }
  const ForwardCache cache = Forward(params, instance.input);
  InstanceResult result = Score(cache, params, scheme, instance, trigger, beam_k);
  if (result.prediction.sequence.labels == instance.gold) {
    grads = Gradients::Zeros(params);
    return result;
  }
  Eigen::MatrixXd d_emissions = Eigen::MatrixXd::Zero(instance.input.size(), params.num_labels());
  Eigen::MatrixXd d_transitions = Eigen::MatrixXd::Zero(params.transitions.scores.rows(),
                                                        params.transitions.scores.cols());
  AccumulateScoreGradient(result.prediction.sequence.labels, 1.0, d_emissions, d_transitions);
  AccumulateScoreGradient(instance.gold, -1.0, d_emissions, d_transitions);
  grads = Backward(params, cache, d_emissions, d_transitions);
  return result;
}

double Objective(std::span<const LabeledInstance> dataset, const ModelParams& params,
                 const TagScheme& scheme, const TrainConfig& config) {
  if (dataset.empty()) throw InputError("objective over an empty dataset");
  double sum = 0.0;
  for (const auto& instance : dataset) {
    sum += InstanceLoss(params, scheme, instance, config.trigger, config.beam_k).loss;
  }
  return sum / static_cast<double>(dataset.size()) +
         0.5 * config.l2_lambda * SquaredNorm(params);
}

void SgdStep(ModelParams& params, const Gradients& grads, double learning_rate, double l2_lambda) {
  if (grads.feature_tables.size() != params.feature_tables.size()) {
    throw ShapeError("sgd step: feature table count mismatch");
  }
  // Validate dense shapes before touching anything.
  CheckShape(params.projection.weight, grads.projection.weight, "projection weight");
  CheckShape(params.transitions.scores, grads.transitions, "transitions");
  CheckShape(params.lstm.forward.w_input, grads.lstm.forward.w_input, "lstm forward");
  CheckShape(params.lstm.backward.w_input, grads.lstm.backward.w_input, "lstm backward");

  Update(params.token_table, grads.token_table, learning_rate, l2_lambda);
  for (size_t i = 0; i < params.feature_tables.size(); ++i) {
    Update(params.feature_tables[i], grads.feature_tables[i], learning_rate, l2_lambda);
  }
  Update(params.lstm.forward, grads.lstm.forward, learning_rate, l2_lambda);
  Update(params.lstm.backward, grads.lstm.backward, learning_rate, l2_lambda);
  Update(params.projection.weight, grads.projection.weight, learning_rate, l2_lambda,
         "projection weight");
  Update(params.projection.bias, grads.projection.bias, learning_rate, l2_lambda,
         "projection bias");
  Update(params.transitions.scores, grads.transitions, learning_rate, l2_lambda, "transitions");
  ++params.generation;
}

std::vector<int> Decode(const ModelParams& params, const EncodedSentence& sentence) {
  if (sentence.size() == 0) return {};
  const ForwardCache cache = Forward(params, sentence);
  return Viterbi(cache.emissions.log_probs, params.transitions).labels;
}

std::string FormatMetricsLine(const EpochMetrics& m) {
  char buf[256];
  if (m.has_dev) {
    std::snprintf(buf, sizeof(buf), "%d\t%.8g\t%.6f\t%.6f\t%.6f\t%.6f", m.epoch,
                  m.learning_rate, m.mean_loss, m.dev_named_f1, m.dev_nominal_f1,
                  m.dev_overall_f1);
  } else {
    std::snprintf(buf, sizeof(buf), "%d\t%.8g\t%.6f\t-\t-\t-", m.epoch, m.learning_rate,
                  m.mean_loss);
  }
  return buf;
}

TrainResult Train(ModelParams params, const TagScheme& scheme,
                  std::span<const LabeledInstance> train, std::span<const LabeledInstance> dev,
                  const TrainConfig& config,
                  const std::function<void(const EpochMetrics&)>& on_epoch) {
  config.Validate();
  if (train.empty()) throw InputError("training set is empty");

  Rng rng(config.seed ^ kShuffleStream);
  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);

  TrainResult result;
  double best_f1 = -1.0;
  Gradients grads;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const double lr = config.EpochLearningRate(epoch);
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    for (size_t i : order) {
      loss_sum += InstanceLossAndGradient(params, scheme, train[i], config.trigger,
                                          config.beam_k, grads)
                      .loss;
      SgdStep(params, grads, lr, config.l2_lambda);
    }

    EpochMetrics metrics;
    metrics.epoch = epoch + 1;
    metrics.learning_rate = lr;
    metrics.mean_loss = loss_sum / static_cast<double>(train.size());
    if (!dev.empty()) {
      std::vector<std::vector<int>> gold, predicted;
      for (const auto& instance : dev) {
        gold.push_back(instance.gold);
        predicted.push_back(Decode(params, instance.input));
      }
      const EvalReport report = EvaluateLabels(gold, predicted, scheme);
      metrics.has_dev = true;
      metrics.dev_named_f1 = report.group(kNamedGroup).f1();
      metrics.dev_nominal_f1 = report.group(kNominalGroup).f1();
      metrics.dev_overall_f1 = report.overall_f1;
    }
    result.log.push_back(metrics);
    if (on_epoch) on_epoch(metrics);

    const bool improved = dev.empty() || metrics.dev_overall_f1 > best_f1;
    if (improved) {
      best_f1 = metrics.dev_overall_f1;
      result.best = params;
      result.best_epoch = metrics.epoch;
    }
  }
  return result;
}

}  // namespace mmner
