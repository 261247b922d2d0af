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

#include "turnpoint/kernels/featurize.h"

namespace turnpoint::kernels {

std::vector<std::vector<FeatureVector>> featurize_serial(
    std::span<const Dialogue* const> dialogues, const FeatureConfig& config) {
  std::vector<std::vector<FeatureVector>> out(dialogues.size());
  for (std::size_t i = 0; i < dialogues.size(); ++i) {
    out[i] = featurize_dialogue(*dialogues[i], config);
  }
  return out;
}

std::vector<std::vector<FeatureVector>> featurize_omp(
    std::span<const Dialogue* const> dialogues, const FeatureConfig& config) {
  std::vector<std::vector<FeatureVector>> out(dialogues.size());
  const long n = static_cast<long>(dialogues.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    out[i] = featurize_dialogue(*dialogues[i], config);
  }
  return out;
}

}  // namespace turnpoint::kernels
