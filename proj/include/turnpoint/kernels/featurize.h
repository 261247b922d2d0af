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

#ifndef TURNPOINT_KERNELS_FEATURIZE_H_
#define TURNPOINT_KERNELS_FEATURIZE_H_

#include <span>
#include <vector>

#include "turnpoint/corpus.h"
#include "turnpoint/features.h"

namespace turnpoint::kernels {

// Feature vectors for every utterance of every dialogue, in input order.
std::vector<std::vector<FeatureVector>> featurize_serial(
    std::span<const Dialogue* const> dialogues, const FeatureConfig& config);

std::vector<std::vector<FeatureVector>> featurize_omp(
    std::span<const Dialogue* const> dialogues, const FeatureConfig& config);

}  // namespace turnpoint::kernels

#endif  // TURNPOINT_KERNELS_FEATURIZE_H_
