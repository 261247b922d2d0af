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

#ifndef TURNPOINT_FEATURES_H_
#define TURNPOINT_FEATURES_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "turnpoint/corpus.h"

namespace turnpoint {

// Dense columns appended after the hashed block when positional features are
// on: normalized utterance index and distance since the last change point.
inline constexpr std::uint32_t kPositionalSize = 2;

struct FeatureConfig {
  std::uint32_t dim = 1U << 18;
  bool lowercase = true;
  bool positional = false;
  std::string separator = "<SEP>";
  std::uint64_t seed = 0;

  std::uint32_t total_dim() const { return dim + (positional ? kPositionalSize : 0); }

  // Stable hex digest of every field; stored with trained models.
  std::string fingerprint() const;
  std::string to_json() const;
  // Missing keys keep their defaults. Throws UsageError on bad values.
  static FeatureConfig from_json(std::string_view text);
  static FeatureConfig load(const std::filesystem::path& path);
};

// Sparse vector with strictly increasing indices and non-zero finite values.
struct FeatureVector {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;

  std::size_t nnz() const { return indices.size(); }
  double dot(std::span<const double> weights) const {
    double s = 0.0;
    for (std::size_t k = 0; k < indices.size(); ++k) s += values[k] * weights[indices[k]];
    return s;
  }
  double value_at(std::uint32_t index) const;

  bool operator==(const FeatureVector&) const = default;
};

// Lowercases unless the token is a <...> placeholder.
std::string normalize_token(std::string_view token, bool lowercase);

struct HashedToken {
  std::uint32_t bucket;
  double sign;
};

// Bucket and sign of a normalized token.
HashedToken hash_token(std::string_view token, const FeatureConfig& config);

// Bag of hashed tokens over utterance t - 1 (when t > 0), the separator and
// utterance t. Throws UsageError when t is out of range.
FeatureVector build_example(const Dialogue& dialogue, int t, const FeatureConfig& config,
                            int last_change_point = -1);

std::vector<FeatureVector> featurize_dialogue(const Dialogue& dialogue,
                                              const FeatureConfig& config);

}  // namespace turnpoint

#endif  // TURNPOINT_FEATURES_H_
