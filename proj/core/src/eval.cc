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

#include "mmner/eval.h"

#include <cstdio>
#include <set>
#include <sstream>

#include "mmner/error.h"

namespace mmner {
namespace {

std::string Surface(const Sentence& sentence, const EntitySpan& span) {
  std::string s;
  for (int t = span.start; t < span.end; ++t) s += sentence.tokens[t];
  return s;
}

void CheckShapes(size_t gold_count, size_t pred_count) {
  if (gold_count != pred_count) {
    throw ShapeError("gold and predicted corpora have different sentence counts");
  }
}

std::vector<EntitySpan> RepairedSpans(const std::vector<int>& labels, const TagScheme& scheme) {
  std::vector<int> copy = labels;
  RepairBio(copy, scheme);
  return EntitiesFromLabels(copy, scheme);
}

std::string Percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * v);
  return buf;
}

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

double SpanCounts::precision() const {
  return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double SpanCounts::recall() const {
  return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double SpanCounts::f1() const {
  const double p = precision(), r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

std::string GroupOf(const EntityType& type) {
  if (type.mention_kind == "NAM") return kNamedGroup;
  if (type.mention_kind == "NOM") return kNominalGroup;
  return type.mention_kind.empty() ? "entity" : type.mention_kind;
}

SpanCounts EvalReport::group(const std::string& name) const {
  auto it = groups.find(name);
  return it == groups.end() ? SpanCounts{} : it->second;
}

EntityLexicon CollectEntitySurfaces(std::span<const Sentence> sentences,
                                    const TagScheme& scheme) {
  EntityLexicon lexicon;
  for (const auto& sentence : sentences) {
    if (!sentence.gold_labels) continue;
    for (const auto& span : RepairedSpans(*sentence.gold_labels, scheme)) {
      lexicon.insert(Surface(sentence, span));
    }
  }
  return lexicon;
}

EvalReport EvaluateLabels(std::span<const std::vector<int>> gold,
                          std::span<const std::vector<int>> predicted, const TagScheme& scheme) {
  CheckShapes(gold.size(), predicted.size());
  std::vector<SpanCounts> per_type(scheme.num_types());
  for (size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].size() != predicted[i].size()) {
      throw ShapeError("sentence " + std::to_string(i) + ": gold and predicted lengths differ");
    }
    const auto gold_spans = RepairedSpans(gold[i], scheme);
    const auto pred_spans = RepairedSpans(predicted[i], scheme);
    const std::set<EntitySpan> gold_set(gold_spans.begin(), gold_spans.end());
    const std::set<EntitySpan> pred_set(pred_spans.begin(), pred_spans.end());
    for (const auto& span : pred_spans) {
      (gold_set.contains(span) ? per_type[span.type].tp : per_type[span.type].fp)++;
    }
    for (const auto& span : gold_spans) {
      if (!pred_set.contains(span)) per_type[span.type].fn++;
    }
  }
  EvalReport report;
  report.groups[kNamedGroup];
  report.groups[kNominalGroup];
  for (int type = 0; type < scheme.num_types(); ++type) {
    report.groups[GroupOf(scheme.types()[type])] += per_type[type];
    report.overall += per_type[type];
  }
  report.overall_f1 = report.overall.f1();
  return report;
}

EvalReport Evaluate(std::span<const Sentence> gold, std::span<const std::vector<int>> predicted,
                    const TagScheme& scheme, const EntityLexicon* train_entities) {
  CheckShapes(gold.size(), predicted.size());
  std::vector<std::vector<int>> gold_labels;
  gold_labels.reserve(gold.size());
  for (const auto& sentence : gold) {
    if (!sentence.gold_labels) throw InputError("evaluation requires gold labels");
    gold_labels.push_back(*sentence.gold_labels);
  }
  EvalReport report = EvaluateLabels(gold_labels, predicted, scheme);
  if (train_entities == nullptr) return report;

  report.has_oov = true;
  for (size_t i = 0; i < gold.size(); ++i) {
    const auto pred_spans = RepairedSpans(predicted[i], scheme);
    const std::set<EntitySpan> pred_set(pred_spans.begin(), pred_spans.end());
    for (const auto& span : RepairedSpans(gold_labels[i], scheme)) {
      if (train_entities->contains(Surface(gold[i], span))) continue;
      ++report.oov_total;
      if (pred_set.contains(span)) ++report.oov_found;
    }
  }
  report.oov_recall = report.oov_total == 0 ? 0.0
                                            : static_cast<double>(report.oov_found) /
                                                  static_cast<double>(report.oov_total);
  return report;
}

double TokenAccuracy(std::span<const std::vector<int>> gold,
                     std::span<const std::vector<int>> predicted) {
  CheckShapes(gold.size(), predicted.size());
  long total = 0, correct = 0;
  for (size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].size() != predicted[i].size()) {
      throw ShapeError("sentence " + std::to_string(i) + ": gold and predicted lengths differ");
    }
    for (size_t t = 0; t < gold[i].size(); ++t) correct += gold[i][t] == predicted[i][t];
    total += static_cast<long>(gold[i].size());
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

std::string RenderReportTable(const EvalReport& report) {
  const SpanCounts named = report.group(kNamedGroup);
  const SpanCounts nominal = report.group(kNominalGroup);
  const std::string oov = report.has_oov ? Percent(report.oov_recall) : "-";
  char buf[512];
  std::ostringstream out;
  std::snprintf(buf, sizeof(buf), "%-9s | %-26s | %-26s | %8s | %6s\n", "", "Named Entity",
                "Nominal Mention", "", "");
  out << buf;
  std::snprintf(buf, sizeof(buf), "%-9s | %8s %8s %8s | %8s %8s %8s | %8s | %6s\n", "", "P", "R",
                "F1", "P", "R", "F1", "Overall", "OOV");
  out << buf;
  std::snprintf(buf, sizeof(buf), "%-9s | %8s %8s %8s | %8s %8s %8s | %8s | %6s\n", "result",
                Percent(named.precision()).c_str(), Percent(named.recall()).c_str(),
                Percent(named.f1()).c_str(), Percent(nominal.precision()).c_str(),
                Percent(nominal.recall()).c_str(), Percent(nominal.f1()).c_str(),
                Percent(report.overall_f1).c_str(), oov.c_str());
  out << buf;
  return out.str();
}

std::string RenderReportTsv(const EvalReport& report) {
  std::ostringstream out;
  out << "group\tprecision\trecall\tf1\ttp\tfp\tfn\n";
  auto line = [&](const std::string& name, const SpanCounts& c) {
    out << name << '\t' << Fixed(c.precision()) << '\t' << Fixed(c.recall()) << '\t'
        << Fixed(c.f1()) << '\t' << c.tp << '\t' << c.fp << '\t' << c.fn << '\n';
  };
  for (const auto& [name, counts] : report.groups) line(name, counts);
  line("overall", report.overall);
  if (report.has_oov) {
    out << "oov_recall\t" << Fixed(report.oov_recall) << '\t' << report.oov_found << '\t'
        << report.oov_total << '\n';
  } else {
    out << "oov_recall\t-\n";
  }
  return out.str();
}

}  // namespace mmner
