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

#include "turnpoint/kernels/sweep.h"

#include <algorithm>

namespace turnpoint::kernels {
namespace {

MatchResult counts_at(double threshold, std::span<const SweepDialogue> dialogues,
                      std::vector<std::uint8_t>& buffer) {
  MatchResult total;
  for (const SweepDialogue& d : dialogues) {
    const std::size_t n = d.scores.size();
    buffer.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
      buffer[t] = (d.scores[t] >= threshold || (!d.forced.empty() && d.forced[t])) ? 1 : 0;
    }
    const auto pred = clusterize(buffer);
    total += match(d.gold, pred);
  }
  return total;
}

}  // namespace

std::vector<MatchResult> sweep_serial(std::span<const double> thresholds,
                                      std::span<const SweepDialogue> dialogues) {
  std::vector<MatchResult> out(thresholds.size());
  std::vector<std::uint8_t> buffer;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    out[i] = counts_at(thresholds[i], dialogues, buffer);
  }
  return out;
}

std::vector<MatchResult> sweep_omp(std::span<const double> thresholds,
                                   std::span<const SweepDialogue> dialogues) {
  std::vector<MatchResult> out(thresholds.size());
  const long n = static_cast<long>(thresholds.size());
#pragma omp parallel
  {
    std::vector<std::uint8_t> buffer;
#pragma omp for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) {
      out[i] = counts_at(thresholds[i], dialogues, buffer);
    }
  }
  return out;
}

}  // namespace turnpoint::kernels
