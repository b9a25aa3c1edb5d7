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

#ifndef MMNER_STRUCTURED_H_
#define MMNER_STRUCTURED_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mmner {

// Label-pair scores with an extra start row: scores(prev, next) for
// prev < num_labels, and scores(start_row(), first) for the first label.
struct TransitionMatrix {
  Eigen::MatrixXd scores;

  int num_labels() const { return static_cast<int>(scores.cols()); }
  int start_row() const { return num_labels(); }

  static TransitionMatrix Zeros(int num_labels) {
    return {Eigen::MatrixXd::Zero(num_labels + 1, num_labels)};
  }
};

struct ScoredSequence {
  std::vector<int> labels;
  double score = 0.0;
};

// Per-position label scores (n x |Y|), e.g. EmissionMatrix::log_probs.
using ScoreMatrix = Eigen::MatrixXd;

// Sum over positions of transition(prev, label) + emission(t, label), with
// the start row as the first predecessor. Each term is added as
// (transition + emission), the same order every decoder uses.
double SentenceScore(const ScoreMatrix& emissions, const TransitionMatrix& transitions,
                     std::span<const int> labels);

// Exact argmax. Ties go to the lower label index at every comparison.
ScoredSequence Viterbi(const ScoreMatrix& emissions, const TransitionMatrix& transitions);

// Up to k sequences in non-increasing score order. Prefixes are expanded by
// every label and the best k kept at each position; the Viterbi sequence is
// always returned first.
std::vector<ScoredSequence> BeamTopK(const ScoreMatrix& emissions,
                                     const TransitionMatrix& transitions, int k);

// Adds sign * d(score)/d(emission) and sign * d(score)/d(transition) for the
// given sequence into the gradient buffers.
void AccumulateScoreGradient(std::span<const int> labels, double sign,
                             Eigen::MatrixXd& d_emissions, Eigen::MatrixXd& d_transitions);

// Ordering used to make rankings deterministic: higher score first, then
// lexicographically smaller labels.
bool RanksBefore(const ScoredSequence& a, const ScoredSequence& b);

}  // namespace mmner

#endif  // MMNER_STRUCTURED_H_
