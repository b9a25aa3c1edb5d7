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

#include "cli.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "config_file.h"
#include "mmner/corpus.h"
#include "mmner/embeddings.h"
#include "mmner/error.h"
#include "mmner/eval.h"
#include "mmner/features.h"
#include "mmner/gradcheck.h"
#include "mmner/model.h"
#include "mmner/serialization.h"
#include "mmner/training.h"

namespace mmner::cli {
namespace {

// ---------------------------------------------------------------------------
// Value parsing shared by flags and config files.

double ParseReal(const std::string& key, const std::string& text) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw InputError(key + ": not a number: '" + text + "'");
  return v;
}

long long ParseInteger(const std::string& key, const std::string& text) {
  size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw InputError(key + ": not an integer: '" + text + "'");
  }
  return v;
}

bool ParseSwitch(const std::string& key, const std::string& text) {
  if (text == "on" || text == "true" || text == "1") return true;
  if (text == "off" || text == "false" || text == "0") return false;
  throw InputError(key + ": expected on or off, got '" + text + "'");
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<double> ParseRealList(const std::string& key, const std::string& text) {
  std::vector<double> values;
  for (const auto& item : SplitList(text)) values.push_back(ParseReal(key, item));
  if (values.empty()) throw InputError(key + ": empty list");
  return values;
}

TagScheme SchemeFromTypes(const std::optional<std::string>& types) {
  if (!types) return TagScheme::Default();
  return TagScheme::FromTypeNames(SplitList(*types));
}

// ---------------------------------------------------------------------------
// File helpers.

std::ifstream OpenInput(const std::string& path, const std::string& what) {
  if (!std::filesystem::is_regular_file(path)) {
    throw InputError(what + " file not found: " + path);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + what + " file: " + path);
  return in;
}

std::vector<Sentence> ReadConllFile(const std::string& path, const TagScheme& scheme,
                                    const std::string& what, bool require_labels,
                                    std::ostream& err) {
  std::ifstream in = OpenInput(path, what);
  ConllParseResult parsed;
  try {
    parsed = ParseConll(in, scheme);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
  if (parsed.repairs > 0) {
    err << path << ": repaired " << parsed.repairs << " orphan I- labels\n";
  }
  if (require_labels) {
    for (size_t i = 0; i < parsed.sentences.size(); ++i) {
      if (!parsed.sentences[i].gold_labels) {
        throw InputError(path + ": sentence " + std::to_string(i + 1) + " has no labels");
      }
    }
  }
  return std::move(parsed.sentences);
}

void WriteTextAtomically(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << contents;
    if (!out) throw InputError("cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InputError("cannot move file into place at " + path);
  }
}

void RequireWritableDirectory(const std::string& path, const std::string& what) {
  auto dir = std::filesystem::path(path).parent_path();
  if (dir.empty()) dir = ".";
  if (!std::filesystem::is_directory(dir)) {
    throw InputError(what + " directory does not exist: " + dir.string());
  }
}

std::vector<LabeledInstance> Encode(const Featurizer& featurizer,
                                    const std::vector<Sentence>& sentences) {
  std::vector<LabeledInstance> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back({featurizer.Encode(s), *s.gold_labels});
  return out;
}

std::vector<std::vector<int>> DecodeAll(const ModelParams& params, const Featurizer& featurizer,
                                        const std::vector<Sentence>& sentences) {
  std::vector<std::vector<int>> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(Decode(params, featurizer.Encode(s)));
  return out;
}

std::vector<std::vector<int>> GoldOf(const std::vector<Sentence>& sentences) {
  std::vector<std::vector<int>> out;
  for (const auto& s : sentences) out.push_back(*s.gold_labels);
  return out;
}

// ---------------------------------------------------------------------------
// train

struct TrainFlags {
  std::optional<std::string> config, train, dev, test, embeddings, model_out, log, types;
  std::optional<std::string> trigger, mode, bigrams, beta_sweep;
  std::optional<std::uint64_t> seed;
  std::optional<double> kappa, beta, lr, decay, l2;
  std::optional<int> beam_k, epochs, window, dim, feature_dim, hidden, min_count;
};

const std::set<std::string>& TrainConfigKeys() {
  static const std::set<std::string> keys = {
      "train", "dev",    "test",  "embeddings", "model-out",  "log",   "types",
      "trigger", "mode", "bigrams", "beta-sweep", "seed",     "kappa", "beta",
      "lr",    "decay",  "l2",    "beam-k",     "epochs",     "window", "dim",
      "feature-dim", "hidden", "min-count"};
  return keys;
}

struct TrainSettings {
  std::optional<std::string> train, dev, test, embeddings, model_out, log, types;
  TrainConfig config;
  FeatureConfig features;
  ModelDims dims;
  int min_count = 1;
  std::optional<std::vector<double>> beta_sweep;
};

// Applies one setting given as text (from a config file or a flag).
void ApplySetting(TrainSettings& s, const std::string& key, const std::string& value) {
  auto as_int = [&](int lo) {
    const long long v = ParseInteger(key, value);
    if (v < lo || v > 1'000'000'000) throw InputError(key + ": out of range: " + value);
    return static_cast<int>(v);
  };
  if (key == "train") s.train = value;
  else if (key == "dev") s.dev = value;
  else if (key == "test") s.test = value;
  else if (key == "embeddings") s.embeddings = value;
  else if (key == "model-out") s.model_out = value;
  else if (key == "log") s.log = value;
  else if (key == "types") s.types = value;
  else if (key == "trigger") s.config.trigger.kind = ParseTriggerKind(value);
  else if (key == "mode") s.features.mode = ParseRepresentation(value);
  else if (key == "bigrams") s.features.bigrams = ParseSwitch(key, value);
  else if (key == "beta-sweep") s.beta_sweep = ParseRealList(key, value);
  else if (key == "seed") {
    const long long v = ParseInteger(key, value);
    if (v < 0) throw InputError("seed: must be non-negative");
    s.config.seed = static_cast<std::uint64_t>(v);
  }
  else if (key == "kappa") s.config.trigger.kappa = ParseReal(key, value);
  else if (key == "beta") s.config.trigger.beta = ParseReal(key, value);
  else if (key == "lr") s.config.learning_rate = ParseReal(key, value);
  else if (key == "decay") s.config.decay = ParseReal(key, value);
  else if (key == "l2") s.config.l2_lambda = ParseReal(key, value);
  else if (key == "beam-k") s.config.beam_k = as_int(1);
  else if (key == "epochs") s.config.epochs = as_int(1);
  else if (key == "window") s.config.window = s.features.window = as_int(1);
  else if (key == "dim") s.dims.token_dim = as_int(1);
  else if (key == "feature-dim") s.dims.feature_dim = as_int(1);
  else if (key == "hidden") s.dims.hidden_dim = as_int(1);
  else if (key == "min-count") s.min_count = as_int(1);
  else throw InputError("unknown setting: " + key);
}

TrainSettings ResolveTrainSettings(const TrainFlags& f) {
  TrainSettings s;
  if (f.config) {
    for (const auto& [key, value] : ReadConfigFile(*f.config, TrainConfigKeys())) {
      ApplySetting(s, key, value);
    }
  }
  auto set = [&](const char* key, const auto& flag) {
    if (!flag) return;
    if constexpr (std::is_same_v<std::decay_t<decltype(*flag)>, std::string>) {
      ApplySetting(s, key, *flag);
    } else {
      std::ostringstream text;
      text.precision(17);
      text << *flag;
      ApplySetting(s, key, text.str());
    }
  };
  set("train", f.train);
  set("dev", f.dev);
  set("test", f.test);
  set("embeddings", f.embeddings);
  set("model-out", f.model_out);
  set("log", f.log);
  set("types", f.types);
  set("trigger", f.trigger);
  set("mode", f.mode);
  set("bigrams", f.bigrams);
  set("beta-sweep", f.beta_sweep);
  set("seed", f.seed);
  set("kappa", f.kappa);
  set("beta", f.beta);
  set("lr", f.lr);
  set("decay", f.decay);
  set("l2", f.l2);
  set("beam-k", f.beam_k);
  set("epochs", f.epochs);
  set("window", f.window);
  set("dim", f.dim);
  set("feature-dim", f.feature_dim);
  set("hidden", f.hidden);
  set("min-count", f.min_count);
  s.config.Validate();
  s.config.trigger.Validate();
  if (!s.train) throw InputError("train: a training file is required (--train)");
  if (!s.model_out && !s.beta_sweep) {
    throw InputError("model-out: an output model path is required (--model-out)");
  }
  return s;
}

void PrintReport(std::ostream& out, const std::string& title, const EvalReport& report) {
  out << title << '\n' << RenderReportTable(report);
}

int CmdTrain(const TrainFlags& flags, std::ostream& out, std::ostream& err) {
  const TrainSettings s = ResolveTrainSettings(flags);
  const TagScheme scheme = SchemeFromTypes(s.types);

  // Validate every path before any work starts.
  OpenInput(*s.train, "train");
  if (s.dev) OpenInput(*s.dev, "dev");
  if (s.test) OpenInput(*s.test, "test");
  if (s.embeddings) OpenInput(*s.embeddings, "embeddings");
  const std::string log_path = s.log ? *s.log : s.model_out.value_or("") + ".metrics.tsv";
  if (s.model_out) {
    RequireWritableDirectory(*s.model_out, "model-out");
    RequireWritableDirectory(log_path, "log");
  }

  const auto train = ReadConllFile(*s.train, scheme, "train", true, err);
  if (train.empty()) throw InputError(*s.train + ": training file has no sentences");
  std::vector<Sentence> dev, test;
  if (s.dev) dev = ReadConllFile(*s.dev, scheme, "dev", true, err);
  if (s.test) test = ReadConllFile(*s.test, scheme, "test", true, err);

  Featurizer featurizer = Featurizer::Fit(s.features, train, s.min_count);
  Rng rng(s.config.seed);
  std::optional<EmbeddingTable> pretrained;
  if (s.embeddings) {
    std::ifstream words_in = OpenInput(*s.embeddings, "embeddings");
    featurizer.ExtendTokenVocab(ReadEmbeddingWords(words_in));
    std::ifstream in = OpenInput(*s.embeddings, "embeddings");
    try {
      pretrained = LoadPretrained(in, featurizer.token_vocab(), s.dims.token_dim, rng);
    } catch (const InputError& e) {
      throw InputError(*s.embeddings + ": " + e.what());
    }
  }
  const ModelParams initial = ModelParams::Initialize(featurizer, scheme, s.dims, rng, pretrained);
  const auto train_instances = Encode(featurizer, train);
  const auto dev_instances = Encode(featurizer, dev);

  if (s.beta_sweep) {
    const auto& eval_set = dev.empty() ? train : dev;
    const auto& eval_instances = dev.empty() ? train_instances : dev_instances;
    out << "beta\toverall_f1\n";
    for (double beta : *s.beta_sweep) {
      TrainConfig config = s.config;
      config.trigger.kind = TriggerKind::kIntegrated;
      config.trigger.beta = beta;
      config.trigger.Validate();
      TrainResult result = Train(initial, scheme, train_instances, dev_instances, config);
      std::vector<std::vector<int>> predicted;
      for (const auto& inst : eval_instances) predicted.push_back(Decode(result.best, inst.input));
      const double f1 = EvaluateLabels(GoldOf(eval_set), predicted, scheme).overall_f1;
      char line[64];
      std::snprintf(line, sizeof(line), "%g\t%.6f\n", beta, f1);
      out << line << std::flush;
    }
    return kExitOk;
  }

  std::string log;
  TrainResult result = Train(initial, scheme, train_instances, dev_instances, s.config,
                             [&](const EpochMetrics& m) {
                               const std::string line = FormatMetricsLine(m);
                               log += line + '\n';
                               err << "epoch " << line << '\n';
                             });

  ModelBundle bundle{scheme, featurizer, s.dims, s.config, std::move(result.best)};
  SaveModel(bundle, *s.model_out);
  WriteTextAtomically(log_path, log);
  out << "model: " << *s.model_out << " (best epoch " << result.best_epoch << ")\n";
  out << "metrics: " << log_path << '\n';

  const EntityLexicon lexicon = CollectEntitySurfaces(train, scheme);
  if (!dev.empty()) {
    PrintReport(out, "dev", Evaluate(dev, DecodeAll(bundle.params, featurizer, dev), scheme,
                                     &lexicon));
  }
  if (!test.empty()) {
    PrintReport(out, "test", Evaluate(test, DecodeAll(bundle.params, featurizer, test), scheme,
                                      &lexicon));
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// predict

struct PredictFlags {
  std::string model;
  std::optional<std::string> input, segmented, types;
};

void CheckTypes(const std::optional<std::string>& types, const TagScheme& model_scheme) {
  if (!types) return;
  const TagScheme requested = SchemeFromTypes(types);
  if (requested.labels() != model_scheme.labels()) {
    std::string names;
    for (const auto& n : model_scheme.type_names()) names += (names.empty() ? "" : ",") + n;
    throw InputError("tag set mismatch: the model was trained with types " + names);
  }
}

int CmdPredict(const PredictFlags& flags, std::ostream& out, std::ostream& err) {
  if (flags.input.has_value() == flags.segmented.has_value()) {
    throw InputError("predict: give exactly one of --input or --segmented");
  }
  ModelBundle bundle = LoadModel(flags.model);
  CheckTypes(flags.types, bundle.scheme);
  std::vector<Sentence> sentences;
  if (flags.input) {
    sentences = ReadConllFile(*flags.input, bundle.scheme, "input", false, err);
  } else {
    std::ifstream in = OpenInput(*flags.segmented, "segmented");
    sentences = ParseSegmentedText(in);
  }
  const auto labels = DecodeAll(bundle.params, bundle.featurizer, sentences);
  WriteConll(out, sentences, labels, bundle.scheme);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// eval

struct EvalFlags {
  std::string gold;
  std::optional<std::string> model, pred, train, types;
  bool tsv = false;
};

int CmdEval(const EvalFlags& flags, std::ostream& out, std::ostream& err) {
  if (flags.model.has_value() == flags.pred.has_value()) {
    throw InputError("eval: give exactly one of --model or --pred");
  }
  std::optional<ModelBundle> bundle;
  if (flags.model) {
    bundle = LoadModel(*flags.model);
    CheckTypes(flags.types, bundle->scheme);
  }
  const TagScheme scheme = bundle ? bundle->scheme : SchemeFromTypes(flags.types);
  const auto gold = ReadConllFile(flags.gold, scheme, "gold", true, err);

  std::vector<std::vector<int>> predicted;
  if (bundle) {
    predicted = DecodeAll(bundle->params, bundle->featurizer, gold);
  } else {
    const auto pred = ReadConllFile(*flags.pred, scheme, "pred", true, err);
    if (pred.size() != gold.size()) {
      throw InputError("pred has " + std::to_string(pred.size()) + " sentences, gold has " +
                       std::to_string(gold.size()));
    }
    for (size_t i = 0; i < pred.size(); ++i) {
      if (pred[i].tokens != gold[i].tokens) {
        throw InputError("pred sentence " + std::to_string(i + 1) +
                         " does not match the gold tokens");
      }
      predicted.push_back(*pred[i].gold_labels);
    }
  }

  std::optional<EntityLexicon> lexicon;
  if (flags.train) {
    lexicon = CollectEntitySurfaces(ReadConllFile(*flags.train, scheme, "train", true, err),
                                    scheme);
  }
  const EvalReport report = Evaluate(gold, predicted, scheme, lexicon ? &*lexicon : nullptr);
  const double accuracy = TokenAccuracy(GoldOf(gold), predicted);
  char line[64];
  if (flags.tsv) {
    out << RenderReportTsv(report);
    std::snprintf(line, sizeof(line), "token_accuracy\t%.6f\n", accuracy);
  } else {
    out << RenderReportTable(report);
    std::snprintf(line, sizeof(line), "token accuracy: %.2f\n", 100.0 * accuracy);
  }
  out << line;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// gradcheck

int CmdGradCheck(const GradCheckOptions& options, std::ostream& out) {
  const GradCheckReport report = RunGradCheck(options);
  char line[160];
  for (const auto& [name, check] : report.tensors) {
    std::snprintf(line, sizeof(line), "%-28s entries=%-6ld max_rel_error=%.3e\n", name.c_str(),
                  check.entries, check.max_rel_error);
    out << line;
  }
  std::snprintf(line, sizeof(line),
                "instances=%d resamples=%d max_rel_error=%.3e worst=%s tolerance=%.0e\n",
                report.instances, report.resamples, report.max_rel_error,
                report.worst_tensor.c_str(), options.tolerance);
  out << line << (report.passed ? "PASS\n" : "FAIL\n");
  return report.passed ? kExitOk : kExitFailure;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Max-margin BiLSTM named entity tagger", "mmner"};
  app.require_subcommand(1);

  TrainFlags train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a model and write it to --model-out");
  train_cmd->add_option("--config", train.config, "Flat key = value settings file");
  train_cmd->add_option("--train", train.train, "Labeled CoNLL training file");
  train_cmd->add_option("--dev", train.dev, "Labeled CoNLL development file");
  train_cmd->add_option("--test", train.test, "Labeled CoNLL test file, reported after training");
  train_cmd->add_option("--embeddings", train.embeddings, "word2vec text embeddings");
  train_cmd->add_option("--model-out", train.model_out, "Output model path");
  train_cmd->add_option("--log", train.log, "Metrics log path (default <model-out>.metrics.tsv)");
  train_cmd->add_option("--types", train.types, "Comma-separated entity types");
  train_cmd->add_option("--seed", train.seed, "Random seed");
  train_cmd->add_option("--trigger", train.trigger, "hamming | fscore | integrated");
  train_cmd->add_option("--kappa", train.kappa, "Margin scale");
  train_cmd->add_option("--beta", train.beta, "Hamming weight of the integrated trigger");
  train_cmd->add_option("--beam-k", train.beam_k, "Beam width for reranking");
  train_cmd->add_option("--lr", train.lr, "Initial learning rate");
  train_cmd->add_option("--decay", train.decay, "Per-epoch learning-rate decay");
  train_cmd->add_option("--l2", train.l2, "L2 regularization strength");
  train_cmd->add_option("--epochs", train.epochs, "Number of epochs");
  train_cmd->add_option("--window", train.window, "Context window (odd)");
  train_cmd->add_option("--mode", train.mode, "positional | segfeat");
  train_cmd->add_option("--bigrams", train.bigrams, "on | off");
  train_cmd->add_option("--dim", train.dim, "Token embedding size");
  train_cmd->add_option("--feature-dim", train.feature_dim, "Feature embedding size");
  train_cmd->add_option("--hidden", train.hidden, "LSTM hidden size per direction");
  train_cmd->add_option("--min-count", train.min_count, "Minimum token count for the vocabulary");
  train_cmd->add_option("--beta-sweep", train.beta_sweep,
                        "Comma-separated beta values; prints beta and overall F1 per value");

  PredictFlags predict;
  CLI::App* predict_cmd = app.add_subcommand("predict", "Label sentences with a trained model");
  predict_cmd->add_option("--model", predict.model, "Model file")->required();
  predict_cmd->add_option("--input", predict.input, "CoNLL input (labels optional)");
  predict_cmd->add_option("--segmented", predict.segmented,
                          "Segmented text, one sentence per line, words separated by spaces");
  predict_cmd->add_option("--types", predict.types, "Expected entity types");

  EvalFlags eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score predictions against gold labels");
  eval_cmd->add_option("--gold", eval.gold, "Labeled CoNLL gold file")->required();
  eval_cmd->add_option("--model", eval.model, "Model used to label the gold tokens");
  eval_cmd->add_option("--pred", eval.pred, "Labeled CoNLL predictions");
  eval_cmd->add_option("--train", eval.train, "Training file for OOV recall");
  eval_cmd->add_option("--types", eval.types, "Entity types");
  eval_cmd->add_flag("--tsv", eval.tsv, "Tab-separated output");

  GradCheckOptions gradcheck;
  CLI::App* gradcheck_cmd =
      app.add_subcommand("gradcheck", "Finite-difference check of the training gradients");
  gradcheck_cmd->add_option("--seed", gradcheck.seed, "First problem seed");
  gradcheck_cmd->add_option("--seeds", gradcheck.seeds, "Number of problems")
      ->check(CLI::PositiveNumber);
  gradcheck_cmd->add_flag("--corrupt-gradient", gradcheck.corrupt_gradient)->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) return CmdTrain(train, out, err);
    if (*predict_cmd) return CmdPredict(predict, out, err);
    if (*eval_cmd) return CmdEval(eval, out, err);
    if (*gradcheck_cmd) return CmdGradCheck(gradcheck, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ModelFileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace mmner::cli
