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

#ifndef MMNER_TRIGGERS_H_
#define MMNER_TRIGGERS_H_

#include <span>
#include <string_view>

#include "mmner/tag_scheme.h"

namespace mmner {

// Structured margin losses comparing a gold sequence l with a candidate lbar.
//
//   Hamming:    kappa * #{j : l_j != lbar_j}
//   FScore:     kappa * (1 - F1(l, lbar))
//   Integrated: FScore + beta * Hamming
//
// F1 is entity level with exact (type, start, end) matches. Two entity-free
// sequences have F1 = 1.
enum class TriggerKind { kHamming, kFScore, kIntegrated };

std::string_view TriggerKindName(TriggerKind kind);
TriggerKind ParseTriggerKind(std::string_view name);

inline constexpr double kDefaultKappa = 0.2;
inline constexpr double kDefaultBeta = 0.2;

struct Trigger {
  TriggerKind kind = TriggerKind::kIntegrated;
  double kappa = kDefaultKappa;
  double beta = kDefaultBeta;

  void Validate() const;
  // True when the loss decomposes over positions.
  bool decomposable() const { return kind == TriggerKind::kHamming; }
  double Delta(std::span<const int> gold, std::span<const int> predicted,
               const TagScheme& scheme) const;
};

double HammingDelta(std::span<const int> gold, std::span<const int> predicted, double kappa);

// Inputs that are not valid BIO are repaired first.
double SentenceF1(std::span<const int> gold, std::span<const int> predicted,
                  const TagScheme& scheme);

double FScoreDelta(std::span<const int> gold, std::span<const int> predicted, double kappa,
                   const TagScheme& scheme);

double IntegratedDelta(std::span<const int> gold, std::span<const int> predicted, double kappa,
                       double beta, const TagScheme& scheme);

}  // namespace mmner

#endif  // MMNER_TRIGGERS_H_
