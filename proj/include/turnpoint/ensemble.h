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

#ifndef TURNPOINT_ENSEMBLE_H_
#define TURNPOINT_ENSEMBLE_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "turnpoint/eval.h"

namespace turnpoint {

enum class CombineRule { kOr, kScoreSum };

// Accepts or|score-sum; throws UsageError otherwise.
CombineRule parse_combine_rule(std::string_view name);
std::string_view to_string(CombineRule rule);

// Element-wise OR. Throws UsageError on an empty member list or unequal
// lengths.
std::vector<std::uint8_t> combine_or(std::span<const std::vector<std::uint8_t>> members);

// Element-wise sum of score sequences, same errors as combine_or.
std::vector<double> combine_sum(std::span<const std::vector<double>> members);

// One dialogue's inputs to a combined curve: the swept (linguistic) scores,
// the fixed binaries of the other members and the gold labels.
struct CombinedDialogue {
  std::vector<double> scores;
  std::vector<std::vector<std::uint8_t>> fixed;
  std::vector<std::uint8_t> gold;
};

// Sweeps the score threshold and ORs the fixed members in at every point.
PRCurve combined_curve(std::span<const CombinedDialogue> dialogues, Scope scope,
                       Execution execution = Execution::kParallel);

Summary combined_summary(std::span<const CombinedDialogue> dialogues,
                         Execution execution = Execution::kParallel);

}  // namespace turnpoint

#endif  // TURNPOINT_ENSEMBLE_H_
