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

#ifndef MMNER_EVAL_H_
#define MMNER_EVAL_H_

#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "mmner/corpus.h"
#include "mmner/tag_scheme.h"

namespace mmner {

struct SpanCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;

  double precision() const;
  double recall() const;
  // 2PR/(P+R), or 0 when P+R = 0.
  double f1() const;

  SpanCounts& operator+=(const SpanCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
};

inline constexpr const char* kNamedGroup = "named";
inline constexpr const char* kNominalGroup = "nominal";

// Reporting group of an entity type: NAM -> named, NOM -> nominal, any other
// mention kind reports under its own name ("entity" when empty).
std::string GroupOf(const EntityType& type);

struct EvalReport {
  std::map<std::string, SpanCounts> groups;
  SpanCounts overall;  // micro: counts summed over every type
  double overall_f1 = 0.0;

  bool has_oov = false;  // false when no training lexicon was supplied
  long oov_total = 0;    // gold entities unseen in training
  long oov_found = 0;
  double oov_recall = 0.0;  // 0 when oov_total == 0

  bool oov_zero_support() const { return has_oov && oov_total == 0; }
  SpanCounts group(const std::string& name) const;
};

// Surface strings of gold entities; used as the reference for OOV recall.
using EntityLexicon = std::unordered_set<std::string>;

EntityLexicon CollectEntitySurfaces(std::span<const Sentence> sentences, const TagScheme& scheme);

// Exact span matching on (type, start, end). Predictions are BIO-repaired
// before spans are read.
EvalReport EvaluateLabels(std::span<const std::vector<int>> gold,
                          std::span<const std::vector<int>> predicted, const TagScheme& scheme);

// As EvaluateLabels, plus OOV recall when train_entities is given.
EvalReport Evaluate(std::span<const Sentence> gold, std::span<const std::vector<int>> predicted,
                    const TagScheme& scheme, const EntityLexicon* train_entities = nullptr);

double TokenAccuracy(std::span<const std::vector<int>> gold,
                     std::span<const std::vector<int>> predicted);

// Aligned table with named / nominal P R F1, overall F1 and OOV recall, in
// percent. OOV renders as "-" without a training lexicon.
std::string RenderReportTable(const EvalReport& report);

// One tab-separated line per group plus overall and oov lines.
std::string RenderReportTsv(const EvalReport& report);

}  // namespace mmner

#endif  // MMNER_EVAL_H_
