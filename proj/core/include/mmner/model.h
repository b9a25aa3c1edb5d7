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

#ifndef MMNER_MODEL_H_
#define MMNER_MODEL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mmner/embeddings.h"
#include "mmner/features.h"
#include "mmner/network.h"
#include "mmner/random.h"
#include "mmner/structured.h"
#include "mmner/tag_scheme.h"

namespace mmner {

struct ModelDims {
  int token_dim = 100;
  int feature_dim = 100;
  int hidden_dim = 100;
};

// All trainable tensors: embedding tables, both LSTM directions, the
// emission projection and the transition matrix.
struct ModelParams {
  EmbeddingTable token_table;
  std::vector<EmbeddingTable> feature_tables;
  std::vector<std::string> feature_names;  // e.g. "bigram", "seg"
  std::vector<int> slot_tables;            // feature slot -> table
  int window = 5;
  BiLstmParams lstm;
  ProjectionParams projection;
  TransitionMatrix transitions;

  // Bumped by every parameter update; forward caches remember the value
  // they were computed under.
  std::uint64_t generation = 0;

  int num_labels() const { return projection.num_labels(); }
  InputAssembly assembly() const;

  // Random initialization with the shapes implied by the featurizer, scheme
  // and dims. A pretrained token table replaces the random one; its row
  // count must match the token vocabulary.
  static ModelParams Initialize(const Featurizer& featurizer, const TagScheme& scheme,
                                const ModelDims& dims, Rng& rng,
                                std::optional<EmbeddingTable> pretrained_tokens = std::nullopt);
};

// Named column-major view of one tensor.
struct TensorView {
  std::string name;
  double* data;
  Eigen::Index rows;
  Eigen::Index cols;
  bool trainable;

  Eigen::Index size() const { return rows * cols; }
  // Element (r, c) of the tensor.
  double& at(Eigen::Index r, Eigen::Index c) const { return data[c * rows + r]; }
};

// Every tensor in a fixed order; the order is also the on-disk order.
std::vector<TensorView> Tensors(ModelParams& params);

double SquaredNorm(const ModelParams& params);

using SparseRows = std::map<int, Eigen::VectorXd>;

// Gradient of a scalar with respect to ModelParams. Embedding gradients are
// kept per touched row.
struct Gradients {
  SparseRows token_table;
  std::vector<SparseRows> feature_tables;
  BiLstmParams lstm;
  ProjectionParams projection;
  Eigen::MatrixXd transitions;

  static Gradients Zeros(const ModelParams& params);

  // Dense copies laid out like Tensors(params).
  std::vector<Eigen::MatrixXd> Densify(const ModelParams& params) const;
};

// Forward state for one sentence.
struct ForwardCache {
  EncodedSentence input;
  std::vector<Eigen::VectorXd> inputs;
  BiLstmCache lstm;
  std::vector<Eigen::VectorXd> hidden;
  EmissionMatrix emissions;

  const ModelParams* params = nullptr;
  std::uint64_t generation = 0;
};

ForwardCache Forward(const ModelParams& params, const EncodedSentence& sentence);

// Backpropagates gradients given on the log emissions and on the transition
// matrix. Throws Error if the cache is missing or was computed under other
// parameters.
Gradients Backward(const ModelParams& params, const ForwardCache& cache,
                   const Eigen::MatrixXd& d_log_emissions, const Eigen::MatrixXd& d_transitions);

}  // namespace mmner

#endif  // MMNER_MODEL_H_
