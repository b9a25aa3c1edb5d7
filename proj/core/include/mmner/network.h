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

#ifndef MMNER_NETWORK_H_
#define MMNER_NETWORK_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mmner/random.h"

namespace mmner {

// One direction of a forget-gate LSTM without peepholes. Every gate matrix
// is hidden_dim x (input_dim + hidden_dim) and acts on [x; h_prev].
struct LstmParams {
  Eigen::MatrixXd w_input, w_forget, w_output, w_cell;
  Eigen::VectorXd b_input, b_forget, b_output, b_cell;

  int input_dim() const { return static_cast<int>(w_input.cols() - w_input.rows()); }
  int hidden_dim() const { return static_cast<int>(w_input.rows()); }

  static LstmParams Zeros(int input_dim, int hidden_dim);
  // Scaled uniform weights, zero biases.
  static LstmParams Random(int input_dim, int hidden_dim, Rng& rng);
};

struct LstmState {
  Eigen::VectorXd h;
  Eigen::VectorXd c;
};

// Everything one cell step needs to run backward.
struct LstmStep {
  Eigen::VectorXd xh;  // [x; h_prev]
  Eigen::VectorXd input_gate, forget_gate, output_gate, candidate;
  Eigen::VectorXd c_prev, c, tanh_c, h;
};

LstmStep LstmCellForward(const Eigen::VectorXd& x, const Eigen::VectorXd& h_prev,
                         const Eigen::VectorXd& c_prev, const LstmParams& params);

inline LstmState LstmCell(const Eigen::VectorXd& x, const Eigen::VectorXd& h_prev,
                          const Eigen::VectorXd& c_prev, const LstmParams& params) {
  LstmStep step = LstmCellForward(x, h_prev, c_prev, params);
  return {std::move(step.h), std::move(step.c)};
}

struct LstmCellGrads {
  Eigen::VectorXd x, h_prev, c_prev;
};

// Backpropagates dh and dc through one step, accumulating weight gradients
// into `grads`.
LstmCellGrads LstmCellBackward(const LstmStep& step, const Eigen::VectorXd& dh,
                               const Eigen::VectorXd& dc, const LstmParams& params,
                               LstmParams& grads);

struct BiLstmParams {
  LstmParams forward;
  LstmParams backward;

  int input_dim() const { return forward.input_dim(); }
  int hidden_dim() const { return forward.hidden_dim(); }
  int output_dim() const { return 2 * forward.hidden_dim(); }
};

// Per-position steps of both directions, indexed by sentence position.
struct BiLstmCache {
  std::vector<LstmStep> forward;
  std::vector<LstmStep> backward;
};

// h_t = [forward h_t; backward h_t], both directions from zero state.
std::vector<Eigen::VectorXd> BiLstmForward(std::span<const Eigen::VectorXd> inputs,
                                           const BiLstmParams& params,
                                           BiLstmCache* cache = nullptr);

// Returns d(loss)/d(input_t) and accumulates parameter gradients.
std::vector<Eigen::VectorXd> BiLstmBackward(const BiLstmCache& cache,
                                            std::span<const Eigen::VectorXd> dh,
                                            const BiLstmParams& params, BiLstmParams& grads);

struct ProjectionParams {
  Eigen::MatrixXd weight;  // num_labels x hidden width
  Eigen::VectorXd bias;

  int num_labels() const { return static_cast<int>(weight.rows()); }
};

// Per-position label distributions. log_probs is computed directly from the
// logits.
struct EmissionMatrix {
  Eigen::MatrixXd probs;      // n x |Y|
  Eigen::MatrixXd log_probs;  // n x |Y|

  int rows() const { return static_cast<int>(probs.rows()); }
  int cols() const { return static_cast<int>(probs.cols()); }

  static EmissionMatrix FromLogits(const Eigen::MatrixXd& logits);
  static EmissionMatrix FromProbabilities(const Eigen::MatrixXd& probs);
};

// Row t = softmax(weight * h_t + bias).
EmissionMatrix Emissions(std::span<const Eigen::VectorXd> hidden, const ProjectionParams& proj);

// Backpropagates a gradient on log_probs to the hidden vectors, accumulating
// projection gradients.
std::vector<Eigen::VectorXd> EmissionsBackward(const EmissionMatrix& emissions,
                                               const Eigen::MatrixXd& d_log_probs,
                                               std::span<const Eigen::VectorXd> hidden,
                                               const ProjectionParams& proj,
                                               ProjectionParams& grads);

// Per-position label score: log y_t[label].
inline double LabelScore(const EmissionMatrix& y, int t, int label) {
  return y.log_probs(t, label);
}

}  // namespace mmner

#endif  // MMNER_NETWORK_H_
