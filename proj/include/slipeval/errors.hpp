// Copyright 2026 The slipeval Authors.
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

#ifndef SLIPEVAL_ERRORS_HPP_
#define SLIPEVAL_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace slipeval {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedNotation : public Error {
 public:
  using Error::Error;
};

// Missing/invalid columns or keys in an input file.
class SchemaError : public Error {
 public:
  using Error::Error;
};

struct RowError {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string message;
};

// Raised by strict corpus loading when one or more rows fail validation.
class CorpusError : public Error {
 public:
  explicit CorpusError(std::vector<RowError> rows);
  const std::vector<RowError>& rows() const { return rows_; }

 private:
  std::vector<RowError> rows_;
};

class InvalidProbability : public Error {
 public:
  using Error::Error;
};

class DegenerateTable : public Error {
 public:
  using Error::Error;
};

class UnknownCondition : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class NoPath : public Error {
 public:
  using Error::Error;
};

class InvalidLattice : public Error {
 public:
  using Error::Error;
};

class SpecError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace slipeval

#endif  // SLIPEVAL_ERRORS_HPP_
