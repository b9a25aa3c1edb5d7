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

#ifndef MMNER_TAG_SCHEME_H_
#define MMNER_TAG_SCHEME_H_

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mmner {

// An entity type such as PER.NAM: a category plus a mention kind.
// The mention kind may be empty for schemes without the named/nominal split.
struct EntityType {
  std::string category;
  std::string mention_kind;

  std::string name() const;
  static EntityType Parse(std::string_view name);

  bool operator==(const EntityType&) const = default;
};

// A typed entity over the token range [start, end).
struct EntitySpan {
  int type = 0;  // index into TagScheme::types()
  int start = 0;
  int end = 0;

  auto operator<=>(const EntitySpan&) const = default;
};

// BIO label inventory. Label 0 is always the outside label "O"; entity type k
// owns labels 1 + 2k (B-) and 2 + 2k (I-). Indices never change for the
// lifetime of a scheme.
class TagScheme {
 public:
  static constexpr int kOutside = 0;

  explicit TagScheme(std::vector<EntityType> types);
  static TagScheme FromTypeNames(std::span<const std::string> names);

  // {PER, ORG, LOC, GPE} x {NAM, NOM}.
  static TagScheme Default();

  int num_labels() const { return static_cast<int>(labels_.size()); }
  int num_types() const { return static_cast<int>(types_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<EntityType>& types() const { return types_; }
  const std::string& outside_label() const { return labels_[kOutside]; }
  std::vector<std::string> type_names() const;

  const std::string& LabelName(int label) const;
  // Throws InputError for names outside the scheme.
  int LabelIndex(std::string_view name) const;
  bool HasLabel(std::string_view name) const;

  bool IsOutside(int label) const { return label == kOutside; }
  bool IsBegin(int label) const { return label > 0 && label % 2 == 1; }
  bool IsInside(int label) const { return label > 0 && label % 2 == 0; }
  // Entity type of a B-/I- label; -1 for O.
  int TypeOf(int label) const { return label == kOutside ? -1 : (label - 1) / 2; }
  int BeginOf(int type) const { return 1 + 2 * type; }
  int InsideOf(int type) const { return 2 + 2 * type; }

  bool operator==(const TagScheme& other) const { return types_ == other.types_; }

 private:
  std::vector<EntityType> types_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
};

// True when every I-X follows B-X or I-X.
bool IsValidBio(std::span<const int> labels, const TagScheme& scheme);

// Rewrites every I-X without a compatible predecessor into B-X.
// Returns the number of labels changed.
int RepairBio(std::vector<int>& labels, const TagScheme& scheme);

// Maximal B-X (I-X)* runs. Throws InputError on invalid BIO.
std::vector<EntitySpan> EntitiesFromLabels(std::span<const int> labels,
                                           const TagScheme& scheme);

// Inverse of EntitiesFromLabels. Throws InputError on overlapping or
// out-of-range spans.
std::vector<int> LabelsFromEntities(std::span<const EntitySpan> spans, int length,
                                    const TagScheme& scheme);

}  // namespace mmner

#endif  // MMNER_TAG_SCHEME_H_
