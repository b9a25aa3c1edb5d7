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

#include <cmath>

#include "mmner/error.h"

namespace mmner {
namespace {

Eigen::VectorXd Sigmoid(const Eigen::VectorXd& a) {
  return a.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

Eigen::VectorXd Tanh(const Eigen::VectorXd& a) {
  return a.unaryExpr([](double v) { return std::tanh(v); });
}

Eigen::MatrixXd ScaledUniform(int rows, int cols, Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  FillUniform(m, std::sqrt(6.0 / (rows + cols)), rng);
  return m;
}

}  // namespace

LstmParams LstmParams::Zeros(int input_dim, int hidden_dim) {
  const int cols = input_dim + hidden_dim;
  LstmParams p;
  p.w_input = p.w_forget = p.w_output = p.w_cell = Eigen::MatrixXd::Zero(hidden_dim, cols);
  p.b_input = p.b_forget = p.b_output = p.b_cell = Eigen::VectorXd::Zero(hidden_dim);
  return p;
}

LstmParams LstmParams::Random(int input_dim, int hidden_dim, Rng& rng) {
  LstmParams p = Zeros(input_dim, hidden_dim);
  const int cols = input_dim + hidden_dim;
  p.w_input = ScaledUniform(hidden_dim, cols, rng);
  p.w_forget = ScaledUniform(hidden_dim, cols, rng);
  p.w_output = ScaledUniform(hidden_dim, cols, rng);
  p.w_cell = ScaledUniform(hidden_dim, cols, rng);
  return p;
}

LstmStep LstmCellForward(const Eigen::VectorXd& x, const Eigen::VectorXd& h_prev,
                         const Eigen::VectorXd& c_prev, const LstmParams& params) {
  const int hidden = params.hidden_dim();
  if (x.size() != params.input_dim() || h_prev.size() != hidden || c_prev.size() != hidden) {
    throw ShapeError("lstm cell: input or state dimension does not match parameters");
  }
  LstmStep s;
  s.xh.resize(x.size() + hidden);
  s.xh << x, h_prev;
  s.input_gate = Sigmoid(params.w_input * s.xh + params.b_input);
  s.forget_gate = Sigmoid(params.w_forget * s.xh + params.b_forget);
  s.output_gate = Sigmoid(params.w_output * s.xh + params.b_output);
  s.candidate = Tanh(params.w_cell * s.xh + params.b_cell);
  s.c_prev = c_prev;
  s.c = s.forget_gate.cwiseProduct(c_prev) + s.input_gate.cwiseProduct(s.candidate);
  s.tanh_c = Tanh(s.c);
  s.h = s.output_gate.cwiseProduct(s.tanh_c);
  return s;
}

LstmCellGrads LstmCellBackward(const LstmStep& s, const Eigen::VectorXd& dh,
                               const Eigen::VectorXd& dc_in, const LstmParams& params,
                               LstmParams& grads) {
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(s.h.size());
  Eigen::VectorXd dc =
      dc_in + dh.cwiseProduct(s.output_gate).cwiseProduct(ones - s.tanh_c.cwiseAbs2());

  const Eigen::VectorXd da_output = dh.cwiseProduct(s.tanh_c).cwiseProduct(
      s.output_gate.cwiseProduct(ones - s.output_gate));
  const Eigen::VectorXd da_input = dc.cwiseProduct(s.candidate).cwiseProduct(
      s.input_gate.cwiseProduct(ones - s.input_gate));
  const Eigen::VectorXd da_forget = dc.cwiseProduct(s.c_prev).cwiseProduct(
      s.forget_gate.cwiseProduct(ones - s.forget_gate));
  const Eigen::VectorXd da_cell =
      dc.cwiseProduct(s.input_gate).cwiseProduct(ones - s.candidate.cwiseAbs2());

  grads.w_input.noalias() += da_input * s.xh.transpose();
  grads.w_forget.noalias() += da_forget * s.xh.transpose();
  grads.w_output.noalias() += da_output * s.xh.transpose();
  grads.w_cell.noalias() += da_cell * s.xh.transpose();
  grads.b_input += da_input;
  grads.b_forget += da_forget;
  grads.b_output += da_output;
  grads.b_cell += da_cell;

  Eigen::VectorXd dxh = params.w_input.transpose() * da_input;
  dxh.noalias() += params.w_forget.transpose() * da_forget;
  dxh.noalias() += params.w_output.transpose() * da_output;
  dxh.noalias() += params.w_cell.transpose() * da_cell;

  const int input_dim = params.input_dim();
  return {dxh.head(input_dim), dxh.tail(params.hidden_dim()), dc.cwiseProduct(s.forget_gate)};
}

std::vector<Eigen::VectorXd> BiLstmForward(std::span<const Eigen::VectorXd> inputs,
                                           const BiLstmParams& params, BiLstmCache* cache) {
  const int n = static_cast<int>(inputs.size());
  if (n == 0) throw ShapeError("bilstm: empty input sequence");
  const int hidden = params.hidden_dim();
  std::vector<LstmStep> fwd(n), bwd(n);

  Eigen::VectorXd h = Eigen::VectorXd::Zero(hidden), c = Eigen::VectorXd::Zero(hidden);
  for (int t = 0; t < n; ++t) {
    fwd[t] = LstmCellForward(inputs[t], h, c, params.forward);
    h = fwd[t].h;
    c = fwd[t].c;
  }
  h.setZero();
  c.setZero();
  for (int t = n - 1; t >= 0; --t) {
    bwd[t] = LstmCellForward(inputs[t], h, c, params.backward);
    h = bwd[t].h;
    c = bwd[t].c;
  }

  std::vector<Eigen::VectorXd> out(n);
  for (int t = 0; t < n; ++t) {
    out[t].resize(2 * hidden);
    out[t] << fwd[t].h, bwd[t].h;
  }
  if (cache != nullptr) {
    cache->forward = std::move(fwd);
    cache->backward = std::move(bwd);
  }
  return out;
}

std::vector<Eigen::VectorXd> BiLstmBackward(const BiLstmCache& cache,
                                            std::span<const Eigen::VectorXd> dh,
                                            const BiLstmParams& params, BiLstmParams& grads) {
  const int n = static_cast<int>(cache.forward.size());
  if (n == 0 || static_cast<int>(dh.size()) != n) {
    throw ShapeError("bilstm backward: cache and gradient lengths differ");
  }
  const int hidden = params.hidden_dim();
  std::vector<Eigen::VectorXd> dx(n);

  Eigen::VectorXd dh_next = Eigen::VectorXd::Zero(hidden);
  Eigen::VectorXd dc_next = Eigen::VectorXd::Zero(hidden);
  for (int t = n - 1; t >= 0; --t) {
    Eigen::VectorXd dh_t = dh[t].head(hidden) + dh_next;
    auto g = LstmCellBackward(cache.forward[t], dh_t, dc_next, params.forward, grads.forward);
    dx[t] = std::move(g.x);
    dh_next = std::move(g.h_prev);
    dc_next = std::move(g.c_prev);
  }
  dh_next.setZero();
  dc_next.setZero();
  for (int t = 0; t < n; ++t) {
    Eigen::VectorXd dh_t = dh[t].tail(hidden) + dh_next;
    auto g = LstmCellBackward(cache.backward[t], dh_t, dc_next, params.backward, grads.backward);
    dx[t] += g.x;
    dh_next = std::move(g.h_prev);
    dc_next = std::move(g.c_prev);
  }
  return dx;
}

EmissionMatrix EmissionMatrix::FromLogits(const Eigen::MatrixXd& logits) {
  EmissionMatrix y;
  y.log_probs.resize(logits.rows(), logits.cols());
  for (Eigen::Index t = 0; t < logits.rows(); ++t) {
    const double max = logits.row(t).maxCoeff();
    const double log_z = max + std::log((logits.row(t).array() - max).exp().sum());
    y.log_probs.row(t) = logits.row(t).array() - log_z;
  }
  y.probs = y.log_probs.array().exp();
  return y;
}

EmissionMatrix EmissionMatrix::FromProbabilities(const Eigen::MatrixXd& probs) {
  EmissionMatrix y;
  y.probs = probs;
  y.log_probs = probs.array().log();
  return y;
}

EmissionMatrix Emissions(std::span<const Eigen::VectorXd> hidden, const ProjectionParams& proj) {
  const int n = static_cast<int>(hidden.size());
  Eigen::MatrixXd logits(n, proj.num_labels());
  for (int t = 0; t < n; ++t) {
    if (hidden[t].size() != proj.weight.cols()) {
      throw ShapeError("emissions: hidden width does not match projection");
    }
    logits.row(t) = (proj.weight * hidden[t] + proj.bias).transpose();
  }
  return EmissionMatrix::FromLogits(logits);
}

std::vector<Eigen::VectorXd> EmissionsBackward(const EmissionMatrix& emissions,
                                               const Eigen::MatrixXd& d_log_probs,
                                               std::span<const Eigen::VectorXd> hidden,
                                               const ProjectionParams& proj,
                                               ProjectionParams& grads) {
  const int n = emissions.rows();
  std::vector<Eigen::VectorXd> dh(n);
  for (int t = 0; t < n; ++t) {
    // d log softmax(z)_j / d z_k = 1{j=k} - p_k
    const Eigen::VectorXd g = d_log_probs.row(t).transpose();
    const Eigen::VectorXd dz = g - emissions.probs.row(t).transpose() * g.sum();
    grads.weight.noalias() += dz * hidden[t].transpose();
    grads.bias += dz;
    dh[t] = proj.weight.transpose() * dz;
  }
  return dh;
}

}  // namespace mmner
