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

#ifndef TURNPOINT_CONFIG_H_
#define TURNPOINT_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace turnpoint {

// Flat key/value settings. Keys under a TOML [table] header are stored as
// "table.key".
class Settings {
 public:
  Settings() = default;
  explicit Settings(nlohmann::json values) : values_(std::move(values)) {}

  // A TOML subset: comments, [table] headers, and key = value lines where
  // the value is a basic string, integer, float, boolean or a single-line
  // array of those. Throws ParseError.
  static Settings parse_toml(std::string_view text, const std::string& source);
  // A JSON object; nested objects are flattened into dotted keys.
  static Settings parse_json(std::string_view text, const std::string& source);
  // JSON for a .json extension, TOML otherwise.
  static Settings load(const std::filesystem::path& path);

  bool contains(std::string_view key) const;
  std::vector<std::string> keys() const;

  // Throws UsageError when a key has the wrong type.
  std::optional<double> get_double(std::string_view key) const;
  std::optional<std::int64_t> get_int(std::string_view key) const;
  std::optional<bool> get_bool(std::string_view key) const;
  std::optional<std::string> get_string(std::string_view key) const;
  std::optional<std::vector<double>> get_doubles(std::string_view key) const;
  std::optional<std::vector<std::string>> get_strings(std::string_view key) const;

  // Throws UsageError naming the first key outside `known`.
  void reject_unknown(std::initializer_list<std::string_view> known,
                      const std::string& what) const;

  const nlohmann::json& values() const { return values_; }

 private:
  nlohmann::json values_ = nlohmann::json::object();
};

}  // namespace turnpoint

#endif  // TURNPOINT_CONFIG_H_
