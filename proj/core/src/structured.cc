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

#include "mmner/structured.h"

#include <algorithm>

#include "mmner/error.h"

namespace mmner {
namespace {

void CheckShapes(const ScoreMatrix& emissions, const TransitionMatrix& transitions) {
  if (emissions.cols() != transitions.num_labels() ||
      transitions.scores.rows() != transitions.num_labels() + 1) {
    throw ShapeError("emission columns and transition matrix shape disagree");
  }
}

}  // namespace

double SentenceScore(const ScoreMatrix& emissions, const TransitionMatrix& transitions,
                     std::span<const int> labels) {
  CheckShapes(emissions, transitions);
  if (static_cast<Eigen::Index>(labels.size()) != emissions.rows()) {
    throw ShapeError("label sequence length differs from emission rows");
  }
  double score = 0.0;
  int prev = transitions.start_row();
  for (size_t t = 0; t < labels.size(); ++t) {
    score += transitions.scores(prev, labels[t]) + emissions(t, labels[t]);
    prev = labels[t];
  }
  return score;
}

ScoredSequence Viterbi(const ScoreMatrix& emissions, const TransitionMatrix& transitions) {
  CheckShapes(emissions, transitions);
  const int n = static_cast<int>(emissions.rows());
  const int num_labels = transitions.num_labels();
  if (n == 0) return {};

  Eigen::MatrixXd best(n, num_labels);
  Eigen::MatrixXi back(n, num_labels);
  for (int j = 0; j < num_labels; ++j) {
    best(0, j) = 0.0 + (transitions.scores(transitions.start_row(), j) + emissions(0, j));
    back(0, j) = -1;
  }
  for (int t = 1; t < n; ++t) {
    for (int j = 0; j < num_labels; ++j) {
      int arg = 0;
      double max = best(t - 1, 0) + (transitions.scores(0, j) + emissions(t, j));
      for (int i = 1; i < num_labels; ++i) {
        const double s = best(t - 1, i) + (transitions.scores(i, j) + emissions(t, j));
        if (s > max) {
          max = s;
          arg = i;
        }
      }
      best(t, j) = max;
      back(t, j) = arg;
    }
  }

  ScoredSequence out;
  out.labels.resize(n);
  int label = 0;
  for (int j = 1; j < num_labels; ++j) {
    if (best(n - 1, j) > best(n - 1, label)) label = j;
  }
  out.score = best(n - 1, label);
  for (int t = n - 1; t >= 0; --t) {
    out.labels[t] = label;
    label = back(t, label);
  }
  return out;
}

bool RanksBefore(const ScoredSequence& a, const ScoredSequence& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.labels < b.labels;
}

std::vector<ScoredSequence> BeamTopK(const ScoreMatrix& emissions,
                                     const TransitionMatrix& transitions, int k) {
  if (k < 1) throw ShapeError("beam width must be at least 1");
  CheckShapes(emissions, transitions);
  const int n = static_cast<int>(emissions.rows());
  const int num_labels = transitions.num_labels();
  if (n == 0) return {};

  ScoredSequence viterbi = Viterbi(emissions, transitions);
  if (k == 1) return {std::move(viterbi)};

  std::vector<ScoredSequence> beam(1);
  std::vector<ScoredSequence> expanded;
  for (int t = 0; t < n; ++t) {
    expanded.clear();
    expanded.reserve(beam.size() * num_labels);
    for (const auto& prefix : beam) {
      const int prev = t == 0 ? transitions.start_row() : prefix.labels.back();
      for (int j = 0; j < num_labels; ++j) {
        ScoredSequence next;
        next.labels.reserve(t + 1);
        next.labels = prefix.labels;
        next.labels.push_back(j);
        next.score = prefix.score + (transitions.scores(prev, j) + emissions(t, j));
        expanded.push_back(std::move(next));
      }
    }
    const size_t keep = std::min<size_t>(k, expanded.size());
    std::partial_sort(expanded.begin(), expanded.begin() + keep, expanded.end(), RanksBefore);
    expanded.resize(keep);
    std::swap(beam, expanded);
  }

  std::vector<ScoredSequence> out;
  out.reserve(k);
  out.push_back(std::move(viterbi));
  for (auto& candidate : beam) {
    if (static_cast<int>(out.size()) == k) break;
    if (candidate.labels == out.front().labels) continue;
    out.push_back(std::move(candidate));
  }
  return out;
}

void AccumulateScoreGradient(std::span<const int> labels, double sign,
                             Eigen::MatrixXd& d_emissions, Eigen::MatrixXd& d_transitions) {
  const int start = static_cast<int>(d_transitions.rows()) - 1;
  int prev = start;
  for (size_t t = 0; t < labels.size(); ++t) {
    d_emissions(t, labels[t]) += sign;
    d_transitions(prev, labels[t]) += sign;
    prev = labels[t];
  }
}

}  // namespace mmner
