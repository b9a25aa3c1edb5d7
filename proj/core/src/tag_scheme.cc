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

#include "mmner/tag_scheme.h"

#include <algorithm>

#include "mmner/error.h"

namespace mmner {

std::string EntityType::name() const {
  return mention_kind.empty() ? category : category + "." + mention_kind;
}

EntityType EntityType::Parse(std::string_view name) {
  if (name.empty()) throw InputError("empty entity type name");
  auto dot = name.rfind('.');
  if (dot == std::string_view::npos) return {std::string(name), ""};
  if (dot == 0 || dot + 1 == name.size()) {
    throw InputError("malformed entity type name: " + std::string(name));
  }
  return {std::string(name.substr(0, dot)), std::string(name.substr(dot + 1))};
}

TagScheme::TagScheme(std::vector<EntityType> types) : types_(std::move(types)) {
  labels_.push_back("O");
  for (const auto& type : types_) {
    labels_.push_back("B-" + type.name());
    labels_.push_back("I-" + type.name());
  }
  for (int i = 0; i < num_labels(); ++i) {
    if (!index_.emplace(labels_[i], i).second) {
      throw InputError("duplicate label in tag scheme: " + labels_[i]);
    }
  }
}

TagScheme TagScheme::FromTypeNames(std::span<const std::string> names) {
  std::vector<EntityType> types;
  types.reserve(names.size());
  for (const auto& name : names) types.push_back(EntityType::Parse(name));
  return TagScheme(std::move(types));
}

TagScheme TagScheme::Default() {
  std::vector<EntityType> types;
  for (const char* category : {"PER", "ORG", "LOC", "GPE"}) {
    for (const char* kind : {"NAM", "NOM"}) types.push_back({category, kind});
  }
  return TagScheme(std::move(types));
}

std::vector<std::string> TagScheme::type_names() const {
  std::vector<std::string> names;
  for (const auto& type : types_) names.push_back(type.name());
  return names;
}

const std::string& TagScheme::LabelName(int label) const {
  if (label < 0 || label >= num_labels()) {
    throw InputError("label index out of range: " + std::to_string(label));
  }
  return labels_[label];
}

int TagScheme::LabelIndex(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw InputError("unknown label: " + std::string(name));
  return it->second;
}

bool TagScheme::HasLabel(std::string_view name) const {
  return index_.contains(std::string(name));
}

namespace {

bool CompatiblePredecessor(int prev, int label, const TagScheme& scheme) {
  return prev != TagScheme::kOutside && scheme.TypeOf(prev) == scheme.TypeOf(label);
}

}  // namespace

bool IsValidBio(std::span<const int> labels, const TagScheme& scheme) {
  int prev = TagScheme::kOutside;
  for (int label : labels) {
    if (label < 0 || label >= scheme.num_labels()) return false;
    if (scheme.IsInside(label) && !CompatiblePredecessor(prev, label, scheme)) return false;
    prev = label;
  }
  return true;
}

int RepairBio(std::vector<int>& labels, const TagScheme& scheme) {
  int repairs = 0;
  int prev = TagScheme::kOutside;
  for (int& label : labels) {
    if (scheme.IsInside(label) && !CompatiblePredecessor(prev, label, scheme)) {
      label = scheme.BeginOf(scheme.TypeOf(label));
      ++repairs;
    }
    prev = label;
  }
  return repairs;
}

std::vector<EntitySpan> EntitiesFromLabels(std::span<const int> labels,
                                           const TagScheme& scheme) {
  if (!IsValidBio(labels, scheme)) throw InputError("invalid BIO label sequence");
  std::vector<EntitySpan> spans;
  const int n = static_cast<int>(labels.size());
  for (int t = 0; t < n; ++t) {
    if (!scheme.IsBegin(labels[t])) continue;
    const int type = scheme.TypeOf(labels[t]);
    int end = t + 1;
    while (end < n && labels[end] == scheme.InsideOf(type)) ++end;
    spans.push_back({type, t, end});
  }
  return spans;
}

std::vector<int> LabelsFromEntities(std::span<const EntitySpan> spans, int length,
                                    const TagScheme& scheme) {
  std::vector<int> labels(length, TagScheme::kOutside);
  std::vector<bool> used(length, false);
  for (const auto& span : spans) {
    if (span.start < 0 || span.start >= span.end || span.end > length) {
      throw InputError("entity span out of range");
    }
    if (span.type < 0 || span.type >= scheme.num_types()) {
      throw InputError("entity span has unknown type");
    }
    for (int t = span.start; t < span.end; ++t) {
      if (used[t]) throw InputError("overlapping entity spans");
      used[t] = true;
      labels[t] = t == span.start ? scheme.BeginOf(span.type) : scheme.InsideOf(span.type);
    }
  }
  return labels;
}

}  // namespace mmner
