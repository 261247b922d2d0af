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

#include "turnpoint/features.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "turnpoint/error.h"
#include "turnpoint/hash.h"

namespace turnpoint {

std::string FeatureConfig::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = dim;
  j["lowercase"] = lowercase;
  j["positional"] = positional;
  j["separator"] = separator;
  j["seed"] = seed;
  return j.dump();
}

std::string FeatureConfig::fingerprint() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(to_json())));
  return buf;
}

FeatureConfig FeatureConfig::from_json(std::string_view text) {
  FeatureConfig c;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.contains("dim")) c.dim = j["dim"].get<std::uint32_t>();
    if (j.contains("lowercase")) c.lowercase = j["lowercase"].get<bool>();
    if (j.contains("positional")) c.positional = j["positional"].get<bool>();
    if (j.contains("separator")) c.separator = j["separator"].get<std::string>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("feature config: ") + e.what());
  }
  if (c.dim == 0) throw UsageError("feature config: dim must be positive");
  return c;
}

FeatureConfig FeatureConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open feature config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

double FeatureVector::value_at(std::uint32_t index) const {
  auto it = std::lower_bound(indices.begin(), indices.end(), index);
  if (it == indices.end() || *it != index) return 0.0;
  return values[static_cast<std::size_t>(it - indices.begin())];
}

std::string normalize_token(std::string_view token, bool lowercase) {
  std::string out(token);
  const bool placeholder = out.size() >= 2 && out.front() == '<' && out.back() == '>';
  if (lowercase && !placeholder) {
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

HashedToken hash_token(std::string_view token, const FeatureConfig& config) {
  const std::uint64_t h = splitmix64(fnv1a64(token, config.seed));
  return {static_cast<std::uint32_t>(h % config.dim), (h >> 63) ? -1.0 : 1.0};
}

FeatureVector build_example(const Dialogue& dialogue, int t, const FeatureConfig& config,
                            int last_change_point) {
  const int n = dialogue.size();
  if (t < 0 || t >= n) {
    throw UsageError("build_example: utterance " + std::to_string(t) + " out of range for '" +
                     dialogue.id + "' (" + std::to_string(n) + " utterances)");
  }
  std::vector<std::pair<std::uint32_t, double>> entries;
  const auto add = [&](std::string_view token) {
    const HashedToken h = hash_token(normalize_token(token, config.lowercase), config);
    entries.emplace_back(h.bucket, h.sign);
  };
  if (t > 0) {
    for (const auto& tok : dialogue.utterances[t - 1].tokens) add(tok);
    add(config.separator);
  }
  for (const auto& tok : dialogue.utterances[t].tokens) add(tok);
  std::sort(entries.begin(), entries.end());

  FeatureVector fv;
  for (std::size_t k = 0; k < entries.size();) {
    const std::uint32_t bucket = entries[k].first;
    double sum = 0.0;
    for (; k < entries.size() && entries[k].first == bucket; ++k) sum += entries[k].second;
    if (sum != 0.0) {
      fv.indices.push_back(bucket);
      fv.values.push_back(sum);
    }
  }
  if (config.positional) {
    const double scale = n > 1 ? 1.0 / (n - 1) : 0.0;
    fv.indices.push_back(config.dim);
    fv.values.push_back(t * scale);
    const double distance = static_cast<double>(t - last_change_point) / n;
    fv.indices.push_back(config.dim + 1);
    fv.values.push_back(distance);
    if (fv.values[fv.values.size() - 2] == 0.0) {
      fv.indices.erase(fv.indices.end() - 2);
      fv.values.erase(fv.values.end() - 2);
    }
  }
  return fv;
}

std::vector<FeatureVector> featurize_dialogue(const Dialogue& dialogue,
                                              const FeatureConfig& config) {
  std::vector<FeatureVector> out;
  out.reserve(dialogue.utterances.size());
  for (int t = 0; t < dialogue.size(); ++t) out.push_back(build_example(dialogue, t, config));
  return out;
}

}  // namespace turnpoint
