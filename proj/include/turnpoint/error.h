/*
 * Copyright 2026 The Turnpoint Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TURNPOINT_ERROR_H_
#define TURNPOINT_ERROR_H_

#include <stdexcept>
#include <string>

namespace turnpoint {

// Base of every error the library throws. The CLI maps the concrete type to
// an exit code: UsageError -> 1, DataError -> 2, NumericError -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or configuration supplied by the caller.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Input data that cannot be parsed or violates a corpus invariant.
class DataError : public Error {
 public:
  using Error::Error;
};

// A malformed record. `line` is 1-based; 0 when not applicable.
class ParseError : public DataError {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : DataError(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A dialogue that parses but breaks one of the data-model rules.
class InvariantError : public DataError {
 public:
  InvariantError(const std::string& dialogue_id, const std::string& rule)
      : DataError("dialogue '" + dialogue_id + "': " + rule),
        dialogue_id_(dialogue_id) {}
  const std::string& dialogue_id() const { return dialogue_id_; }

 private:
  std::string dialogue_id_;
};

// Non-finite values or degenerate probability mass during computation.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace turnpoint

#endif  // TURNPOINT_ERROR_H_
