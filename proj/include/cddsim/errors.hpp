// Copyright 2026 The cddsim Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace cddsim {

// All library failures derive from Error so callers can map them to one
// exit-code family without enumerating every subtype.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotHermitianError : public Error {
 public:
  explicit NotHermitianError(const std::string& what) : Error(what) {}
};

class DimensionMismatchError : public Error {
 public:
  explicit DimensionMismatchError(const std::string& what) : Error(what) {}
};

class NotNormalizedError : public Error {
 public:
  explicit NotNormalizedError(const std::string& what) : Error(what) {}
};

class UnsupportedCountError : public Error {
 public:
  explicit UnsupportedCountError(const std::string& what) : Error(what) {}
};

class IndexOutOfRangeError : public Error {
 public:
  explicit IndexOutOfRangeError(const std::string& what) : Error(what) {}
};

class NegativeWidthError : public Error {
 public:
  explicit NegativeWidthError(const std::string& what) : Error(what) {}
};

class NegativeLevelError : public Error {
 public:
  explicit NegativeLevelError(const std::string& what) : Error(what) {}
};

class NonPositiveRepetitionsError : public Error {
 public:
  explicit NonPositiveRepetitionsError(const std::string& what) : Error(what) {}
};

class TooFewIntervalsError : public Error {
 public:
  explicit TooFewIntervalsError(const std::string& what) : Error(what) {}
};

class SequenceFileInvalidError : public Error {
 public:
  explicit SequenceFileInvalidError(const std::string& what) : Error(what) {}
};

class SynthesisFailedError : public Error {
 public:
  explicit SynthesisFailedError(const std::string& what) : Error(what) {}
};

class IncompleteSeriesError : public Error {
 public:
  explicit IncompleteSeriesError(const std::string& what) : Error(what) {}
};

class IncompleteGridError : public Error {
 public:
  explicit IncompleteGridError(const std::string& what) : Error(what) {}
};

class BudgetExceededError : public Error {
 public:
  explicit BudgetExceededError(const std::string& what) : Error(what) {}
};

// Config-file failures carry the offending location.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("parse error at line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

}  // namespace cddsim
