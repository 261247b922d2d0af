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

#ifndef TURNPOINT_CSV_H_
#define TURNPOINT_CSV_H_

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace turnpoint {

// Reads delimiter-separated records with RFC 4180 quoting: fields may be
// wrapped in double quotes, which then may contain the delimiter, newlines and
// doubled quotes.
class CsvReader {
 public:
  CsvReader(std::istream& in, char delimiter) : in_(in), delimiter_(delimiter) {}

  // Next record, or nullopt at end of input. Throws ParseError on an
  // unterminated quoted field.
  std::optional<std::vector<std::string>> next();

  // 1-based line on which the last returned record started.
  int record_line() const { return record_line_; }

 private:
  std::istream& in_;
  char delimiter_;
  int line_ = 1;
  int record_line_ = 0;
};

// Quotes a field when it contains the delimiter, a quote or a newline.
std::string csv_escape(const std::string& field, char delimiter = ',');

}  // namespace turnpoint

#endif  // TURNPOINT_CSV_H_
