// Copyright 2026 The gecx Authors. All Rights Reserved.
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

#ifndef GECX_ERROR_H_
#define GECX_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gecx {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input: corpus files, vocabularies, dictionaries, configs.
// The CLI maps these to exit code 2.
class FormatError : public Error {
 public:
  using Error::Error;
  FormatError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

class Utf8Error : public FormatError {
 public:
  using FormatError::FormatError;
};

// No complete alignment of subwords to the gold sentence exists.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace gecx

#endif  // GECX_ERROR_H_
