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

#ifndef MMNER_RANDOM_H_
#define MMNER_RANDOM_H_

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace mmner {

// All randomness in the library flows from one seeded generator per run.
using Rng = std::mt19937_64;

inline void FillUniform(Eigen::Ref<Eigen::MatrixXd> m, double bound, Rng& rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = dist(rng);
  }
}

}  // namespace mmner

#endif  // MMNER_RANDOM_H_
