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

#include "turnpoint/manifest.h"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "turnpoint/error.h"
#include "turnpoint/hash.h"

namespace turnpoint {

std::string hash_text(std::string_view text) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(text)));
  return buf;
}

std::string hash_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return hash_text(ss.str());
}

std::string manifest_line(const ManifestEntry& e, std::string_view timestamp) {
  nlohmann::ordered_json j;
  j["command"] = e.command;
  j["timestamp"] = std::string(timestamp);
  j["config_hash"] = e.config_hash;
  j["corpus_hash"] = e.corpus_hash;
  j["seeds"] = e.seeds;
  j["model_fingerprints"] = e.model_fingerprints;
  j["inputs"] = e.inputs;
  j["outputs"] = e.outputs;
  j["metrics"] = e.metrics;
  return j.dump();
}

void append_manifest(const std::filesystem::path& path, const ManifestEntry& entry) {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw UsageError("cannot append to manifest '" + path.string() + "'");
  out << manifest_line(entry, stamp) << '\n';
}

}  // namespace turnpoint
