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

#include "mmner/triggers.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>
#include <tuple>
#include <vector>

#include "mmner/error.h"

namespace mmner {
namespace {

void CheckLengths(std::span<const int> gold, std::span<const int> predicted) {
  if (gold.size() != predicted.size()) {
    throw ShapeError("gold and predicted label sequences differ in length");
  }
}

}  // namespace

std::string_view TriggerKindName(TriggerKind kind) {
  switch (kind) {
    case TriggerKind::kHamming:
      return "hamming";
    case TriggerKind::kFScore:
      return "fscore";
    case TriggerKind::kIntegrated:
      return "integrated";
  }
  return "?";
}

TriggerKind ParseTriggerKind(std::string_view name) {
  if (name == "hamming") return TriggerKind::kHamming;
  if (name == "fscore") return TriggerKind::kFScore;
  if (name == "integrated") return TriggerKind::kIntegrated;
  throw InputError("unknown trigger: " + std::string(name) +
                   " (expected hamming, fscore or integrated)");
}

void Trigger::Validate() const {
  if (!std::isfinite(kappa) || kappa < 0) throw InputError("kappa must be finite and >= 0");
  if (!std::isfinite(beta) || beta < 0) throw InputError("beta must be finite and >= 0");
}

double Trigger::Delta(std::span<const int> gold, std::span<const int> predicted,
                      const TagScheme& scheme) const {
  switch (kind) {
    case TriggerKind::kHamming:
      return HammingDelta(gold, predicted, kappa);
    case TriggerKind::kFScore:
      return FScoreDelta(gold, predicted, kappa, scheme);
    case TriggerKind::kIntegrated:
      return IntegratedDelta(gold, predicted, kappa, beta, scheme);
  }
  return 0.0;
}

double HammingDelta(std::span<const int> gold, std::span<const int> predicted, double kappa) {
  CheckLengths(gold, predicted);
  int mismatches = 0;
  for (size_t j = 0; j < gold.size(); ++j) mismatches += gold[j] != predicted[j];
  return kappa * mismatches;
}

double SentenceF1(std::span<const int> gold, std::span<const int> predicted,
                  const TagScheme& scheme) {
  CheckLengths(gold, predicted);
  // Both sides are BIO-repaired before spans are read.
  std::vector<int> gold_labels(gold.begin(), gold.end());
  std::vector<int> pred_labels(predicted.begin(), predicted.end());
  RepairBio(gold_labels, scheme);
  RepairBio(pred_labels, scheme);
  const auto gold_spans = EntitiesFromLabels(gold_labels, scheme);
  const auto pred_spans = EntitiesFromLabels(pred_labels, scheme);
  if (gold_spans.empty() && pred_spans.empty()) return 1.0;
  if (gold_spans.empty() || pred_spans.empty()) return 0.0;
  // Both lists come out sorted by start position and spans never overlap.
  std::vector<EntitySpan> matches;
  std::set_intersection(gold_spans.begin(), gold_spans.end(), pred_spans.begin(),
                        pred_spans.end(), std::back_inserter(matches),
                        [](const EntitySpan& a, const EntitySpan& b) {
                          return std::tie(a.start, a.end, a.type) <
                                 std::tie(b.start, b.end, b.type);
                        });
  const double tp = static_cast<double>(matches.size());
  const double precision = tp / static_cast<double>(pred_spans.size());
  const double recall = tp / static_cast<double>(gold_spans.size());
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

double FScoreDelta(std::span<const int> gold, std::span<const int> predicted, double kappa,
                   const TagScheme& scheme) {
  return kappa * (1.0 - SentenceF1(gold, predicted, scheme));
}

double IntegratedDelta(std::span<const int> gold, std::span<const int> predicted, double kappa,
                       double beta, const TagScheme& scheme) {
  return FScoreDelta(gold, predicted, kappa, scheme) + beta * HammingDelta(gold, predicted, kappa);
}

}  // namespace mmner
