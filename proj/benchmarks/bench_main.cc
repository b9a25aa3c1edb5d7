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

#include <benchmark/benchmark.h>

#include <random>

#include "mmner/corpus.h"
#include "mmner/features.h"
#include "mmner/model.h"
#include "mmner/random.h"
#include "mmner/structured.h"
#include "mmner/training.h"

namespace mmner {
namespace {

constexpr int kDefaultLabels = 17;

struct DecodeInputs {
  ScoreMatrix emissions;
  TransitionMatrix transitions;
};

DecodeInputs RandomInputs(int length, int labels) {
  Rng rng(7);
  DecodeInputs in{Eigen::MatrixXd(length, labels), TransitionMatrix::Zeros(labels)};
  FillUniform(in.emissions, 5.0, rng);
  FillUniform(in.transitions.scores, 1.0, rng);
  return in;
}

void BM_Viterbi(benchmark::State& state) {
  const DecodeInputs in = RandomInputs(static_cast<int>(state.range(0)), kDefaultLabels);
  for (auto _ : state) benchmark::DoNotOptimize(Viterbi(in.emissions, in.transitions));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Viterbi)->Arg(10)->Arg(40)->Arg(160);

void BM_BeamTopK(benchmark::State& state) {
  const DecodeInputs in = RandomInputs(40, kDefaultLabels);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(BeamTopK(in.emissions, in.transitions, k));
}
BENCHMARK(BM_BeamTopK)->Arg(1)->Arg(8)->Arg(32);

void BM_LossAugmented(benchmark::State& state) {
  const TagScheme scheme = TagScheme::Default();
  const DecodeInputs in = RandomInputs(40, scheme.num_labels());
  const std::vector<int> gold(40, TagScheme::kOutside);
  const Trigger trigger{static_cast<TriggerKind>(state.range(0)), kDefaultKappa, kDefaultBeta};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        LossAugmentedPredict(in.emissions, in.transitions, gold, trigger, 8, scheme));
  }
  state.SetLabel(std::string(TriggerKindName(trigger.kind)));
}
BENCHMARK(BM_LossAugmented)->DenseRange(0, 2);

// One sentence through the default-size network.
struct NetworkFixture {
  TagScheme scheme = TagScheme::Default();
  ModelParams params;
  LabeledInstance instance;

  explicit NetworkFixture(int length) {
    std::vector<std::string> words;
    for (int i = 0; i < length; ++i) words.push_back(std::string(1, static_cast<char>('a' + i % 26)));
    Sentence sentence = SentenceFromWords(words);
    sentence.gold_labels = std::vector<int>(length, TagScheme::kOutside);
    std::vector<Sentence> corpus = {sentence};
    Featurizer featurizer = Featurizer::Fit(FeatureConfig{}, corpus, 1);
    Rng rng(11);
    params = ModelParams::Initialize(featurizer, scheme, ModelDims{}, rng);
    instance = {featurizer.Encode(sentence), *sentence.gold_labels};
  }
};

void BM_Forward(benchmark::State& state) {
  NetworkFixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Forward(f.params, f.instance.input));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Forward)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_InstanceGradient(benchmark::State& state) {
  NetworkFixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Gradients grads = Gradients::Zeros(f.params);
    benchmark::DoNotOptimize(
        InstanceLossAndGradient(f.params, f.scheme, f.instance, Trigger{}, 8, grads));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_InstanceGradient)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace mmner

BENCHMARK_MAIN();
