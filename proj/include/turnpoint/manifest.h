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

#ifndef TURNPOINT_MANIFEST_H_
#define TURNPOINT_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace turnpoint {

// 16 hex digits of FNV-1a over the bytes.
std::string hash_text(std::string_view text);
// Hash of a file's contents; throws UsageError when it cannot be read.
std::string hash_file(const std::filesystem::path& path);

struct ManifestEntry {
  std::string command;
  std::string config_hash;
  std::string corpus_hash;
  std::map<std::string, std::uint64_t> seeds;
  std::map<std::string, std::string> model_fingerprints;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
};

// The entry as one JSON line, stamped with the given UTC time.
std::string manifest_line(const ManifestEntry& entry, std::string_view timestamp);

// Appends one line stamped with the current UTC time.
void append_manifest(const std::filesystem::path& path, const ManifestEntry& entry);

}  // namespace turnpoint

#endif  // TURNPOINT_MANIFEST_H_
