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

#include "turnpoint/ensemble.h"

#include <string>

#include "turnpoint/error.h"

namespace turnpoint {
namespace {

template <typename T>
void check_members(std::span<const std::vector<T>> members, const char* what) {
  if (members.empty()) throw UsageError(std::string(what) + ": no members");
  for (const auto& m : members) {
    if (m.size() != members.front().size()) {
      throw UsageError(std::string(what) + ": members differ in length (" +
                       std::to_string(m.size()) + " vs " +
                       std::to_string(members.front().size()) + ")");
    }
  }
}

std::vector<ScoredDialogue> to_scored(std::span<const CombinedDialogue> dialogues) {
  std::vector<ScoredDialogue> out;
  out.reserve(dialogues.size());
  for (const auto& d : dialogues) {
    ScoredDialogue s;
    s.scores = d.scores;
    s.gold = d.gold;
    if (!d.fixed.empty()) {
      s.forced = combine_or(d.fixed);
      if (s.forced.size() != d.scores.size()) {
        throw UsageError("combined_curve: member length differs from the scores");
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

CombineRule parse_combine_rule(std::string_view name) {
  if (name == "or") return CombineRule::kOr;
  if (name == "score-sum") return CombineRule::kScoreSum;
  throw UsageError("unknown combine rule '" + std::string(name) + "' (expected or|score-sum)");
}

std::string_view to_string(CombineRule rule) {
  return rule == CombineRule::kOr ? "or" : "score-sum";
}

std::vector<std::uint8_t> combine_or(std::span<const std::vector<std::uint8_t>> members) {
  check_members(members, "combine_or");
  std::vector<std::uint8_t> out(members.front().size(), 0);
  for (const auto& m : members) {
    for (std::size_t i = 0; i < m.size(); ++i) out[i] = (out[i] || m[i]) ? 1 : 0;
  }
  return out;
}

std::vector<double> combine_sum(std::span<const std::vector<double>> members) {
  check_members(members, "combine_sum");
  std::vector<double> out(members.front().size(), 0.0);
  for (const auto& m : members) {
    for (std::size_t i = 0; i < m.size(); ++i) out[i] += m[i];
  }
  return out;
}

PRCurve combined_curve(std::span<const CombinedDialogue> dialogues, Scope scope,
                       Execution execution) {
  return pr_curve(to_scored(dialogues), scope, execution);
}

Summary combined_summary(std::span<const CombinedDialogue> dialogues, Execution execution) {
  return summarize(to_scored(dialogues), execution);
}

}  // namespace turnpoint
