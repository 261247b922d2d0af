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

#include "turnpoint/config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "turnpoint/error.h"

namespace turnpoint {
namespace {

class TomlLine {
 public:
  TomlLine(std::string_view text, const std::string& source, int line)
      : s_(text), source_(source), line_(line) {}

  void skip_space() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool at_end_or_comment() {
    skip_space();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string key() {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == '"') return string_value();
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
            s_[pos_] == '-' || s_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a key");
    return std::string(s_.substr(start, pos_ - start));
  }

  nlohmann::json value() {
    skip_space();
    if (pos_ >= s_.size()) fail("missing value");
    const char c = s_[pos_];
    if (c == '"') return string_value();
    if (c == '[') return array_value();
    if (s_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      return true;
    }
    if (s_.compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      return false;
    }
    return number_value();
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(source_, line_, what);
  }

 private:
  std::string string_value() {
    ++pos_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      char c = s_[pos_++];
      if (c == '\\') {
        if (pos_ >= s_.size()) break;
        const char e = s_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      }
      out.push_back(c);
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  nlohmann::json array_value() {
    ++pos_;
    nlohmann::json arr = nlohmann::json::array();
    if (consume(']')) return arr;
    while (true) {
      arr.push_back(value());
      if (consume(',')) {
        if (consume(']')) return arr;
        continue;
      }
      if (consume(']')) return arr;
      fail("expected ',' or ']' in array");
    }
  }

  nlohmann::json number_value() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '+' ||
            s_[pos_] == '-' || s_[pos_] == '.' || s_[pos_] == '_')) {
      ++pos_;
    }
    std::string token(s_.substr(start, pos_ - start));
    token.erase(std::remove(token.begin(), token.end(), '_'), token.end());
    if (token.empty()) fail("expected a value");
    const bool is_float = token.find_first_of(".eE") != std::string::npos;
    const char* first = token.data() + (token.front() == '+' ? 1 : 0);
    const char* last = token.data() + token.size();
    if (is_float) {
      double v = 0.0;
      const auto r = std::from_chars(first, last, v);
      if (r.ec != std::errc() || r.ptr != last) fail("bad number '" + token + "'");
      return v;
    }
    std::int64_t v = 0;
    const auto r = std::from_chars(first, last, v);
    if (r.ec != std::errc() || r.ptr != last) fail("bad value '" + token + "'");
    return v;
  }

  std::string_view s_;
  const std::string& source_;
  int line_;
  std::size_t pos_ = 0;
};

void flatten(const nlohmann::json& j, const std::string& prefix, nlohmann::json& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      flatten(*it, key, out);
    } else {
      out[key] = *it;
    }
  }
}

}  // namespace

Settings Settings::parse_toml(std::string_view text, const std::string& source) {
  nlohmann::json values = nlohmann::json::object();
  std::string table;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    ++line_no;
    TomlLine line(raw, source, line_no);
    if (!line.at_end_or_comment()) {
      if (line.consume('[')) {
        table = line.key();
        if (!line.consume(']')) line.fail("expected ']'");
      } else {
        std::string key = line.key();
        if (!table.empty()) key = table + "." + key;
        if (!line.consume('=')) line.fail("expected '='");
        if (values.contains(key)) line.fail("duplicate key '" + key + "'");
        values[key] = line.value();
      }
      if (!line.at_end_or_comment()) line.fail("unexpected trailing characters");
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return Settings(std::move(values));
}

Settings Settings::parse_json(std::string_view text, const std::string& source) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source, 0, e.what());
  }
  if (!parsed.is_object()) throw ParseError(source, 0, "expected a JSON object");
  nlohmann::json values = nlohmann::json::object();
  flatten(parsed, "", values);
  return Settings(std::move(values));
}

Settings Settings::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  if (path.extension() == ".json") return parse_json(ss.str(), path.string());
  return parse_toml(ss.str(), path.string());
}

bool Settings::contains(std::string_view key) const {
  return values_.contains(std::string(key));
}

std::vector<std::string> Settings::keys() const {
  std::vector<std::string> out;
  for (auto it = values_.begin(); it != values_.end(); ++it) out.push_back(it.key());
  return out;
}

namespace {

[[noreturn]] void wrong_type(std::string_view key, const char* expected) {
  throw UsageError("config key '" + std::string(key) + "' must be " + expected);
}

}  // namespace

std::optional<double> Settings::get_double(std::string_view key) const {
  if (!contains(key)) return std::nullopt;
  const auto& v = values_[std::string(key)];
  if (!v.is_number()) wrong_type(key, "a number");
  return v.get<double>();
}

std::optional<std::int64_t> Settings::get_int(std::string_view key) const {
  if (!contains(key)) return std::nullopt;
  const auto& v = values_[std::string(key)];
  if (!v.is_number_integer()) wrong_type(key, "an integer");
  return v.get<std::int64_t>();
}

std::optional<bool> Settings::get_bool(std::string_view key) const {
  if (!contains(key)) return std::nullopt;
  const auto& v = values_[std::string(key)];
  if (!v.is_boolean()) wrong_type(key, "a boolean");
  return v.get<bool>();
}

std::optional<std::string> Settings::get_string(std::string_view key) const {
  if (!contains(key)) return std::nullopt;
  const auto& v = values_[std::string(key)];
  if (!v.is_string()) wrong_type(key, "a string");
  return v.get<std::string>();
}

std::optional<std::vector<double>> Settings::get_doubles(std::string_view key) const {
  if (!contains(key)) return std::nullopt;
  const auto& v = values_[std::string(key)];
  if (!v.is_array()) wrong_type(key, "an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) wrong_type(key, "an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::optional<std::vector<std::string>> Settings::get_strings(std::string_view key) const {
  if (!contains(key)) return std::nullopt;
  const auto& v = values_[std::string(key)];
  if (!v.is_array()) wrong_type(key, "an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) wrong_type(key, "an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

void Settings::reject_unknown(std::initializer_list<std::string_view> known,
                              const std::string& what) const {
  for (auto it = values_.begin(); it != values_.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      throw UsageError(what + ": unknown key '" + it.key() + "'");
    }
  }
}

}  // namespace turnpoint
