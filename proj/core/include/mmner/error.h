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

#ifndef MMNER_ERROR_H_
#define MMNER_ERROR_H_

#include <stdexcept>
#include <string>

namespace mmner {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent user input: data files, configs, label names.
class InputError : public Error {
 public:
  using Error::Error;
};

// Tensor or sequence dimensions that do not conform.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Problems reading a serialized model file.
class ModelFileError : public Error {
 public:
  enum class Code { kBadMagic, kTruncated, kUnsupportedVersion, kShapeMismatch, kIo };

  ModelFileError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

}  // namespace mmner

#endif  // MMNER_ERROR_H_
