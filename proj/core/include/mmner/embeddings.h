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

#ifndef MMNER_EMBEDDINGS_H_
#define MMNER_EMBEDDINGS_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mmner/corpus.h"
#include "mmner/random.h"

namespace mmner {

// Fallback initialization range for rows without a pretrained vector.
inline constexpr double kEmbeddingInitBound = 0.1;

// Lookup table; row i is the vector for vocabulary index i. Rows 0 (UNK) and
// 1 (PAD) always exist.
struct EmbeddingTable {
  Eigen::MatrixXd vectors;
  bool trainable = true;

  int dim() const { return static_cast<int>(vectors.cols()); }
  int size() const { return static_cast<int>(vectors.rows()); }
  auto row(int index) const { return vectors.row(index); }

  static EmbeddingTable Random(int size, int dim, Rng& rng);
};

// Reads word2vec text output: "<word> v1 ... v_dim" per line, with an
// optional "<count> <dim>" header. Vocabulary words found in the file take
// the file vector, the others get uniform random rows, and UNK becomes the
// mean of the loaded vectors (zero if none loaded).
EmbeddingTable LoadPretrained(std::istream& in, const Vocab& vocab, int dim, Rng& rng);

// Words listed in a pretrained file, in file order.
std::vector<std::string> ReadEmbeddingWords(std::istream& in);

// Token and feature ids of one sentence, ready for window assembly.
struct EncodedSentence {
  std::vector<int> tokens;
  std::vector<std::vector<int>> features;  // features[t][slot]

  int size() const { return static_cast<int>(tokens.size()); }
};

// Non-owning view describing how per-position input vectors are built:
// the token embeddings of a centered window followed by one embedding per
// feature slot. slot_tables[s] selects the table used by slot s.
struct InputAssembly {
  int window = 1;
  const EmbeddingTable* token_table = nullptr;
  std::vector<const EmbeddingTable*> feature_tables;
  std::vector<int> slot_tables;

  int half_window() const { return (window - 1) / 2; }
  int width() const;
  // Offset of feature slot s inside an assembled vector.
  int slot_offset(int slot) const;
};

std::vector<Eigen::VectorXd> AssembleWindow(const EncodedSentence& sentence,
                                            const InputAssembly& assembly);

}  // namespace mmner

#endif  // MMNER_EMBEDDINGS_H_
