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

#ifndef TURNPOINT_KERNELS_SWEEP_H_
#define TURNPOINT_KERNELS_SWEEP_H_

#include <cstdint>
#include <span>
#include <vector>

#include "turnpoint/eval.h"

namespace turnpoint::kernels {

struct SweepDialogue {
  std::span<const double> scores;
  // Empty, or positives ORed in at every threshold.
  std::span<const std::uint8_t> forced;
  std::span<const ClusterSpan> gold;
};

// Pooled match counts at each threshold: predictions are score >= threshold
// (OR forced). One entry per threshold, in input order.
std::vector<MatchResult> sweep_serial(std::span<const double> thresholds,
                                      std::span<const SweepDialogue> dialogues);

// Same result; thresholds are distributed over OpenMP threads.
std::vector<MatchResult> sweep_omp(std::span<const double> thresholds,
                                   std::span<const SweepDialogue> dialogues);

}  // namespace turnpoint::kernels

#endif  // TURNPOINT_KERNELS_SWEEP_H_
