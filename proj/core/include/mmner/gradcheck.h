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

#ifndef MMNER_GRADCHECK_H_
#define MMNER_GRADCHECK_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mmner/model.h"
#include "mmner/tag_scheme.h"
#include "mmner/training.h"

namespace mmner {

// Compares analytic gradients of the instance loss q_i against central
// finite differences on tiny random models. Models alternate between the
// positional representation with bigram features and the segmentation
// feature representation. Triggers cycle through every kind.
struct GradCheckOptions {
  int seeds = 20;
  std::uint64_t seed = 1;
  double epsilon = 1e-4;
  double tolerance = 1e-4;
  // Relative error is |a - n| / max(|a|, |n|, floor).
  double denominator_floor = 1e-6;
  int max_resamples = 50;
  // Test hook: perturbs one analytic gradient entry so the check must fail.
  bool corrupt_gradient = false;
};

struct TensorCheck {
  double max_rel_error = 0.0;
  long entries = 0;
};

struct GradCheckReport {
  std::map<std::string, TensorCheck> tensors;
  int instances = 0;
  int resamples = 0;  // tie or zero-loss configurations replaced
  double max_rel_error = 0.0;
  std::string worst_tensor;
  bool passed = false;
};

double RelativeError(double analytic, double numeric, double floor);

// A tiny random model plus one labeled instance, as used by the check.
struct TinyProblem {
  TagScheme scheme;
  ModelParams params;
  LabeledInstance instance;
  Trigger trigger;
};

TinyProblem MakeTinyProblem(std::uint64_t seed);

// Checks one problem. Returns false when a perturbation changes the
// loss-augmented argmax (a tie region), in which case nothing is recorded.
bool CheckProblem(TinyProblem& problem, const GradCheckOptions& options, int beam_k,
                  GradCheckReport& report);

GradCheckReport RunGradCheck(const GradCheckOptions& options);

}  // namespace mmner

#endif  // MMNER_GRADCHECK_H_
