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

#include "mmner/embeddings.h"

#include <charconv>
#include <istream>

#include "mmner/error.h"

namespace mmner {
namespace {

std::vector<std::string_view> SplitSpaces(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

bool ParseDouble(std::string_view field, double& value) {
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  return ec == std::errc() && ptr == field.data() + field.size();
}

bool IsInteger(std::string_view field) {
  if (field.empty()) return false;
  for (char c : field) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

bool IsHeader(const std::vector<std::string_view>& fields, int dim) {
  return fields.size() == 2 && IsInteger(fields[0]) && IsInteger(fields[1]) &&
         std::stoi(std::string(fields[1])) == dim;
}

}  // namespace

EmbeddingTable EmbeddingTable::Random(int size, int dim, Rng& rng) {
  EmbeddingTable table;
  table.vectors.resize(size, dim);
  FillUniform(table.vectors, kEmbeddingInitBound, rng);
  return table;
}

EmbeddingTable LoadPretrained(std::istream& in, const Vocab& vocab, int dim, Rng& rng) {
  if (dim < 1) throw InputError("embedding dimension must be positive");
  EmbeddingTable table = EmbeddingTable::Random(vocab.size(), dim, rng);
  std::vector<bool> loaded(vocab.size(), false);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim);
  int loaded_count = 0;

  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = SplitSpaces(line);
    if (fields.empty()) continue;
    if (line_number == 1 && IsHeader(fields, dim)) continue;
    if (static_cast<int>(fields.size()) != dim + 1) {
      throw InputError("embedding file line " + std::to_string(line_number) + ": expected " +
                       std::to_string(dim) + " components, found " +
                       std::to_string(fields.size() - 1));
    }
    Eigen::VectorXd v(dim);
    for (int d = 0; d < dim; ++d) {
      if (!ParseDouble(fields[d + 1], v[d])) {
        throw InputError("embedding file line " + std::to_string(line_number) +
                         ": non-numeric component '" + std::string(fields[d + 1]) + "'");
      }
    }
    if (!vocab.Contains(fields[0])) continue;
    const int index = vocab.Lookup(fields[0]);
    if (loaded[index]) continue;  // first occurrence wins
    loaded[index] = true;
    table.vectors.row(index) = v.transpose();
    sum += v;
    ++loaded_count;
  }
  table.vectors.row(Vocab::kUnk) =
      loaded_count == 0 ? Eigen::RowVectorXd::Zero(dim)
                        : Eigen::RowVectorXd(sum.transpose() / loaded_count);
  return table;
}

std::vector<std::string> ReadEmbeddingWords(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    auto fields = SplitSpaces(line);
    if (fields.empty()) continue;
    if (line_number == 1 && fields.size() == 2 && IsInteger(fields[0]) && IsInteger(fields[1])) {
      continue;
    }
    words.emplace_back(fields[0]);
  }
  return words;
}

int InputAssembly::width() const {
  int w = window * token_table->dim();
  for (int table : slot_tables) w += feature_tables[table]->dim();
  return w;
}

int InputAssembly::slot_offset(int slot) const {
  int offset = window * token_table->dim();
  for (int s = 0; s < slot; ++s) offset += feature_tables[slot_tables[s]]->dim();
  return offset;
}

std::vector<Eigen::VectorXd> AssembleWindow(const EncodedSentence& sentence,
                                            const InputAssembly& assembly) {
  if (assembly.window < 1 || assembly.window % 2 == 0) {
    throw ShapeError("window size must be odd and positive");
  }
  const int n = sentence.size();
  const int half = assembly.half_window();
  const int token_dim = assembly.token_table->dim();
  const int width = assembly.width();
  std::vector<Eigen::VectorXd> out;
  out.reserve(n);
  for (int t = 0; t < n; ++t) {
    Eigen::VectorXd x(width);
    int offset = 0;
    for (int o = -half; o <= half; ++o) {
      const int p = t + o;
      const int id = p < 0 || p >= n ? Vocab::kPad : sentence.tokens[p];
      x.segment(offset, token_dim) = assembly.token_table->row(id).transpose();
      offset += token_dim;
    }
    const auto& features = sentence.features.empty() ? std::vector<int>{} : sentence.features[t];
    if (features.size() != assembly.slot_tables.size()) {
      throw ShapeError("feature slot count differs from the input assembly");
    }
    for (size_t s = 0; s < features.size(); ++s) {
      const EmbeddingTable& table = *assembly.feature_tables[assembly.slot_tables[s]];
      x.segment(offset, table.dim()) = table.row(features[s]).transpose();
      offset += table.dim();
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace mmner
