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

#include "mmner/serialization.h"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "mmner/error.h"

namespace mmner {
namespace {

static_assert(std::endian::native == std::endian::little,
              "model files are little-endian; add byte swapping for this platform");

using Code = ModelFileError::Code;

// Upper bound on any single length field; guards against allocating from a
// corrupted header.
constexpr std::uint64_t kMaxCount = std::uint64_t{1} << 40;
constexpr std::uint32_t kMaxString = 1u << 24;

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void Bytes(const void* data, size_t n) { out_.write(static_cast<const char*>(data), n); }
  void U8(std::uint8_t v) { Bytes(&v, 1); }
  void U32(std::uint32_t v) { Bytes(&v, 4); }
  void U64(std::uint64_t v) { Bytes(&v, 8); }
  void F64(double v) { Bytes(&v, 8); }
  void Str(const std::string& s) {
    U32(static_cast<std::uint32_t>(s.size()));
    Bytes(s.data(), s.size());
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void Bytes(void* data, size_t n) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
    if (static_cast<size_t>(in_.gcount()) != n) {
      throw ModelFileError(Code::kTruncated, "model file is truncated");
    }
  }
  std::uint8_t U8() {
    std::uint8_t v;
    Bytes(&v, 1);
    return v;
  }
  std::uint32_t U32() {
    std::uint32_t v;
    Bytes(&v, 4);
    return v;
  }
  std::uint64_t U64() {
    std::uint64_t v;
    Bytes(&v, 8);
    return v;
  }
  double F64() {
    double v;
    Bytes(&v, 8);
    return v;
  }
  std::string Str() {
    const std::uint32_t n = U32();
    if (n > kMaxString) throw ModelFileError(Code::kShapeMismatch, "string field too long");
    std::string s(n, '\0');
    Bytes(s.data(), n);
    return s;
  }

 private:
  std::istream& in_;
};

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::map<std::string, std::string> Settings(const ModelBundle& b) {
  const auto& f = b.featurizer.config();
  const auto& c = b.config;
  return {
      {"mode", std::string(RepresentationName(f.mode))},
      {"bigrams", f.bigrams ? "on" : "off"},
      {"window", std::to_string(f.window)},
      {"token_dim", std::to_string(b.dims.token_dim)},
      {"feature_dim", std::to_string(b.dims.feature_dim)},
      {"hidden_dim", std::to_string(b.dims.hidden_dim)},
      {"trigger", std::string(TriggerKindName(c.trigger.kind))},
      {"kappa", FormatDouble(c.trigger.kappa)},
      {"beta", FormatDouble(c.trigger.beta)},
      {"lr", FormatDouble(c.learning_rate)},
      {"decay", FormatDouble(c.decay)},
      {"l2", FormatDouble(c.l2_lambda)},
      {"epochs", std::to_string(c.epochs)},
      {"beam_k", std::to_string(c.beam_k)},
      {"seed", std::to_string(c.seed)},
  };
}

const std::string& Setting(const std::map<std::string, std::string>& s, const std::string& key) {
  auto it = s.find(key);
  if (it == s.end()) {
    throw ModelFileError(Code::kShapeMismatch, "model file is missing setting '" + key + "'");
  }
  return it->second;
}

}  // namespace

void SaveModel(const ModelBundle& bundle, std::ostream& out) {
  Writer w(out);
  w.Bytes(kModelMagic, sizeof(kModelMagic));
  w.U32(kModelFormatVersion);

  const auto types = bundle.scheme.type_names();
  w.U32(static_cast<std::uint32_t>(types.size()));
  for (const auto& t : types) w.Str(t);

  const auto settings = Settings(bundle);
  w.U32(static_cast<std::uint32_t>(settings.size()));
  for (const auto& [key, value] : settings) {
    w.Str(key);
    w.Str(value);
  }

  const std::pair<const char*, const Vocab*> vocabs[] = {
      {"tokens", &bundle.featurizer.token_vocab()},
      {"bigrams", &bundle.featurizer.bigram_vocab()},
  };
  w.U32(2);
  for (const auto& [name, vocab] : vocabs) {
    w.Str(name);
    w.U64(static_cast<std::uint64_t>(vocab->size()));
    for (const auto& word : vocab->words()) w.Str(word);
  }

  auto tensors = Tensors(const_cast<ModelParams&>(bundle.params));
  w.U32(static_cast<std::uint32_t>(tensors.size()));
  for (const auto& t : tensors) {
    w.Str(t.name);
    w.U64(static_cast<std::uint64_t>(t.rows));
    w.U64(static_cast<std::uint64_t>(t.cols));
    w.U8(t.trainable ? 1 : 0);
    for (Eigen::Index r = 0; r < t.rows; ++r) {
      for (Eigen::Index c = 0; c < t.cols; ++c) w.F64(t.at(r, c));
    }
  }
  if (!out) throw ModelFileError(Code::kIo, "failed to write model");
}

void SaveModel(const ModelBundle& bundle, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ModelFileError(Code::kIo, "cannot open " + tmp + " for writing");
    try {
      SaveModel(bundle, out);
      out.close();
      if (!out) throw ModelFileError(Code::kIo, "failed to write " + tmp);
    } catch (...) {
      out.close();
      std::filesystem::remove(tmp);
      throw;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ModelFileError(Code::kIo, "cannot move model into place at " + path);
  }
}

ModelBundle LoadModel(std::istream& in) {
  Reader r(in);
  char magic[sizeof(kModelMagic)];
  r.Bytes(magic, sizeof(magic));
  if (std::memcmp(magic, kModelMagic, sizeof(magic)) != 0) {
    throw ModelFileError(Code::kBadMagic, "not an mmner model file");
  }
  const std::uint32_t version = r.U32();
  if (version != kModelFormatVersion) {
    throw ModelFileError(Code::kUnsupportedVersion,
                         "unsupported model version " + std::to_string(version) +
                             " (this build reads version " +
                             std::to_string(kModelFormatVersion) + ")");
  }

  const std::uint32_t type_count = r.U32();
  if (type_count > kMaxCount) throw ModelFileError(Code::kShapeMismatch, "bad type count");
  std::vector<std::string> types(type_count);
  for (auto& t : types) t = r.Str();

  std::map<std::string, std::string> settings;
  const std::uint32_t setting_count = r.U32();
  for (std::uint32_t i = 0; i < setting_count; ++i) {
    std::string key = r.Str();
    settings[key] = r.Str();
  }

  std::map<std::string, std::vector<std::string>> vocabs;
  const std::uint32_t vocab_count = r.U32();
  for (std::uint32_t i = 0; i < vocab_count; ++i) {
    std::string name = r.Str();
    const std::uint64_t size = r.U64();
    if (size > kMaxCount) throw ModelFileError(Code::kShapeMismatch, "bad vocabulary size");
    std::vector<std::string> words;
    for (std::uint64_t k = 0; k < size; ++k) words.push_back(r.Str());
    vocabs[name] = std::move(words);
  }

  try {
    TagScheme scheme = TagScheme::FromTypeNames(types);
    FeatureConfig fc;
    fc.mode = ParseRepresentation(Setting(settings, "mode"));
    fc.bigrams = Setting(settings, "bigrams") == "on";
    fc.window = std::stoi(Setting(settings, "window"));
    Featurizer featurizer(fc, Vocab::FromWords(vocabs.at("tokens")),
                          Vocab::FromWords(vocabs.at("bigrams")));

    ModelDims dims;
    dims.token_dim = std::stoi(Setting(settings, "token_dim"));
    dims.feature_dim = std::stoi(Setting(settings, "feature_dim"));
    dims.hidden_dim = std::stoi(Setting(settings, "hidden_dim"));

    TrainConfig config;
    config.trigger.kind = ParseTriggerKind(Setting(settings, "trigger"));
    config.trigger.kappa = std::stod(Setting(settings, "kappa"));
    config.trigger.beta = std::stod(Setting(settings, "beta"));
    config.learning_rate = std::stod(Setting(settings, "lr"));
    config.decay = std::stod(Setting(settings, "decay"));
    config.l2_lambda = std::stod(Setting(settings, "l2"));
    config.epochs = std::stoi(Setting(settings, "epochs"));
    config.beam_k = std::stoi(Setting(settings, "beam_k"));
    config.seed = std::stoull(Setting(settings, "seed"));
    config.window = fc.window;

    // Shapes come from a fresh initialization; the file must match them.
    Rng rng(0);
    ModelParams params = ModelParams::Initialize(featurizer, scheme, dims, rng);
    auto views = Tensors(params);
    const std::uint32_t tensor_count = r.U32();
    if (tensor_count != views.size()) {
      throw ModelFileError(Code::kShapeMismatch, "model file has " +
                                                     std::to_string(tensor_count) +
                                                     " tensors, expected " +
                                                     std::to_string(views.size()));
    }
    for (auto& view : views) {
      const std::string name = r.Str();
      const std::uint64_t rows = r.U64();
      const std::uint64_t cols = r.U64();
      const bool trainable = r.U8() != 0;
      if (name != view.name || rows != static_cast<std::uint64_t>(view.rows) ||
          cols != static_cast<std::uint64_t>(view.cols)) {
        throw ModelFileError(Code::kShapeMismatch,
                             "tensor '" + name + "' (" + std::to_string(rows) + "x" +
                                 std::to_string(cols) + ") does not match expected '" +
                                 view.name + "' (" + std::to_string(view.rows) + "x" +
                                 std::to_string(view.cols) + ")");
      }
      for (Eigen::Index row = 0; row < view.rows; ++row) {
        for (Eigen::Index col = 0; col < view.cols; ++col) view.at(row, col) = r.F64();
      }
      if (name == "embed.tokens") params.token_table.trainable = trainable;
      for (size_t i = 0; i < params.feature_names.size(); ++i) {
        if (name == "embed." + params.feature_names[i]) {
          params.feature_tables[i].trainable = trainable;
        }
      }
    }
    return ModelBundle{std::move(scheme), std::move(featurizer), dims, config, std::move(params)};
  } catch (const ModelFileError&) {
    throw;
  } catch (const std::exception& e) {
    throw ModelFileError(Code::kShapeMismatch, std::string("inconsistent model file: ") + e.what());
  }
}

ModelBundle LoadModel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFileError(Code::kIo, "cannot open model file " + path);
  return LoadModel(in);
}

}  // namespace mmner
