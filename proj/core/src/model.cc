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

#include "mmner/model.h"

#include <cmath>

#include "mmner/error.h"

namespace mmner {
namespace {

void AddLstmViews(std::vector<TensorView>& out, const std::string& prefix, LstmParams& p) {
  auto add = [&](const char* name, auto& m) {
    out.push_back({prefix + name, m.data(), m.rows(), m.cols(), true});
  };
  add(".w_input", p.w_input);
  add(".w_forget", p.w_forget);
  add(".w_output", p.w_output);
  add(".w_cell", p.w_cell);
  add(".b_input", p.b_input);
  add(".b_forget", p.b_forget);
  add(".b_output", p.b_output);
  add(".b_cell", p.b_cell);
}

void ScatterRows(SparseRows& rows, int index, const Eigen::VectorXd& grad) {
  auto [it, inserted] = rows.try_emplace(index, grad);
  if (!inserted) it->second += grad;
}

Eigen::MatrixXd DenseRows(const SparseRows& rows, const EmbeddingTable& table) {
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(table.size(), table.dim());
  for (const auto& [index, grad] : rows) dense.row(index) = grad.transpose();
  return dense;
}

}  // namespace

InputAssembly ModelParams::assembly() const {
  InputAssembly a;
  a.window = window;
  a.token_table = &token_table;
  for (const auto& table : feature_tables) a.feature_tables.push_back(&table);
  a.slot_tables = slot_tables;
  return a;
}

ModelParams ModelParams::Initialize(const Featurizer& featurizer, const TagScheme& scheme,
                                    const ModelDims& dims, Rng& rng,
                                    std::optional<EmbeddingTable> pretrained_tokens) {
  if (dims.token_dim < 1 || dims.feature_dim < 1 || dims.hidden_dim < 1) {
    throw InputError("model dimensions must be positive");
  }
  ModelParams p;
  p.window = featurizer.config().window;
  if (pretrained_tokens) {
    if (pretrained_tokens->size() != featurizer.token_vocab().size() ||
        pretrained_tokens->dim() != dims.token_dim) {
      throw ShapeError("pretrained token table does not match vocabulary and token_dim");
    }
    p.token_table = std::move(*pretrained_tokens);
  } else {
    p.token_table = EmbeddingTable::Random(featurizer.token_vocab().size(), dims.token_dim, rng);
  }
  for (int size : featurizer.feature_table_sizes()) {
    p.feature_tables.push_back(EmbeddingTable::Random(size, dims.feature_dim, rng));
  }
  p.feature_names = featurizer.feature_table_names();
  p.slot_tables = featurizer.slot_tables();

  const int input_dim = p.assembly().width();
  p.lstm.forward = LstmParams::Random(input_dim, dims.hidden_dim, rng);
  p.lstm.backward = LstmParams::Random(input_dim, dims.hidden_dim, rng);

  const int labels = scheme.num_labels();
  p.projection.weight.resize(labels, 2 * dims.hidden_dim);
  FillUniform(p.projection.weight, std::sqrt(6.0 / (labels + 2 * dims.hidden_dim)), rng);
  p.projection.bias = Eigen::VectorXd::Zero(labels);
  p.transitions = TransitionMatrix::Zeros(labels);
  return p;
}

std::vector<TensorView> Tensors(ModelParams& p) {
  std::vector<TensorView> out;
  auto& tokens = p.token_table.vectors;
  out.push_back({"embed.tokens", tokens.data(), tokens.rows(), tokens.cols(),
                 p.token_table.trainable});
  for (size_t i = 0; i < p.feature_tables.size(); ++i) {
    auto& m = p.feature_tables[i].vectors;
    out.push_back({"embed." + p.feature_names[i], m.data(), m.rows(), m.cols(),
                   p.feature_tables[i].trainable});
  }
  AddLstmViews(out, "lstm.forward", p.lstm.forward);
  AddLstmViews(out, "lstm.backward", p.lstm.backward);
  out.push_back({"projection.weight", p.projection.weight.data(), p.projection.weight.rows(),
                 p.projection.weight.cols(), true});
  out.push_back({"projection.bias", p.projection.bias.data(), p.projection.bias.rows(), 1, true});
  out.push_back({"transitions", p.transitions.scores.data(), p.transitions.scores.rows(),
                 p.transitions.scores.cols(), true});
  return out;
}

double SquaredNorm(const ModelParams& params) {
  double sum = 0.0;
  for (const auto& view : Tensors(const_cast<ModelParams&>(params))) {
    if (!view.trainable) continue;
    sum += Eigen::Map<const Eigen::VectorXd>(view.data, view.size()).squaredNorm();
  }
  return sum;
}

Gradients Gradients::Zeros(const ModelParams& p) {
  Gradients g;
  g.feature_tables.resize(p.feature_tables.size());
  g.lstm.forward = LstmParams::Zeros(p.lstm.input_dim(), p.lstm.hidden_dim());
  g.lstm.backward = LstmParams::Zeros(p.lstm.input_dim(), p.lstm.hidden_dim());
  g.projection.weight = Eigen::MatrixXd::Zero(p.projection.weight.rows(),
                                              p.projection.weight.cols());
  g.projection.bias = Eigen::VectorXd::Zero(p.projection.bias.size());
  g.transitions = Eigen::MatrixXd::Zero(p.transitions.scores.rows(), p.transitions.scores.cols());
  return g;
}

std::vector<Eigen::MatrixXd> Gradients::Densify(const ModelParams& p) const {
  std::vector<Eigen::MatrixXd> out;
  out.push_back(DenseRows(token_table, p.token_table));
  for (size_t i = 0; i < feature_tables.size(); ++i) {
    out.push_back(DenseRows(feature_tables[i], p.feature_tables[i]));
  }
  for (const LstmParams* l : {&lstm.forward, &lstm.backward}) {
    out.push_back(l->w_input);
    out.push_back(l->w_forget);
    out.push_back(l->w_output);
    out.push_back(l->w_cell);
    out.push_back(l->b_input);
    out.push_back(l->b_forget);
    out.push_back(l->b_output);
    out.push_back(l->b_cell);
  }
  out.push_back(projection.weight);
  out.push_back(projection.bias);
  out.push_back(transitions);
  return out;
}

ForwardCache Forward(const ModelParams& params, const EncodedSentence& sentence) {
  if (sentence.size() == 0) throw ShapeError("cannot run the network on an empty sentence");
  ForwardCache cache;
  cache.input = sentence;
  cache.inputs = AssembleWindow(sentence, params.assembly());
  cache.hidden = BiLstmForward(cache.inputs, params.lstm, &cache.lstm);
  cache.emissions = Emissions(cache.hidden, params.projection);
  cache.params = &params;
  cache.generation = params.generation;
  return cache;
}

Gradients Backward(const ModelParams& params, const ForwardCache& cache,
                   const Eigen::MatrixXd& d_log_emissions, const Eigen::MatrixXd& d_transitions) {
  if (cache.params == nullptr) throw Error("backward called without a forward cache");
  if (cache.params != &params || cache.generation != params.generation) {
    throw Error("backward called with a stale forward cache");
  }
  const int n = cache.input.size();
  if (d_log_emissions.rows() != n || d_log_emissions.cols() != params.num_labels() ||
      d_transitions.rows() != params.transitions.scores.rows() ||
      d_transitions.cols() != params.transitions.scores.cols()) {
    throw ShapeError("backward: upstream gradient shapes do not match the model");
  }

  Gradients grads = Gradients::Zeros(params);
  grads.transitions = d_transitions;
  if (d_log_emissions.isZero(0.0)) return grads;

  auto dh = EmissionsBackward(cache.emissions, d_log_emissions, cache.hidden, params.projection,
                              grads.projection);
  auto dx = BiLstmBackward(cache.lstm, dh, params.lstm, grads.lstm);

  const InputAssembly assembly = params.assembly();
  const int half = assembly.half_window();
  const int token_dim = params.token_table.dim();
  for (int t = 0; t < n; ++t) {
    int offset = 0;
    for (int o = -half; o <= half; ++o) {
      const int p = t + o;
      const int id = p < 0 || p >= n ? Vocab::kPad : cache.input.tokens[p];
      ScatterRows(grads.token_table, id, dx[t].segment(offset, token_dim));
      offset += token_dim;
    }
    const auto& features = cache.input.features[t];
    for (size_t s = 0; s < features.size(); ++s) {
      const int table = params.slot_tables[s];
      const int dim = params.feature_tables[table].dim();
      ScatterRows(grads.feature_tables[table], features[s], dx[t].segment(offset, dim));
      offset += dim;
    }
  }
  return grads;
}

}  // namespace mmner
