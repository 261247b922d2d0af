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

#ifndef TURNPOINT_TESTS_FIXTURES_H_
#define TURNPOINT_TESTS_FIXTURES_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "turnpoint/card.h"
#include "turnpoint/corpus.h"

namespace turnpoint::testing {

// A, K, 2, 7 in slots 0..3.
inline CardInventory standard_cards() {
  return CardInventory({Card{"A", CardRole::kVowel}, Card{"K", CardRole::kConsonant},
                        Card{"2", CardRole::kEven}, Card{"7", CardRole::kOdd}});
}

inline constexpr std::uint8_t kA = 1, kK = 2, k2 = 4, k7 = 8;

// Utterances given as (speaker, text). Every speaker gets a solo of `solo`
// and a final equal to it at the last utterance, unless overridden later.
inline Dialogue dialogue(const std::string& id,
                         const std::vector<std::pair<std::string, std::string>>& turns,
                         std::uint8_t solo = kA | k7) {
  Dialogue d;
  d.id = id;
  d.cards = standard_cards();
  for (std::size_t i = 0; i < turns.size(); ++i) {
    d.utterances.push_back({static_cast<int>(i), turns[i].first, tokenize(turns[i].second)});
  }
  for (const auto& p : d.participants()) {
    d.submissions.push_back({p, Phase::kSolo, CardSet::from_mask(solo), kBeforeFirstUtterance});
  }
  return d;
}

inline void add_finals(Dialogue& d) {
  for (const auto& p : d.participants()) {
    CardSet last;
    for (const auto& s : d.submissions) {
      if (s.participant == p) last = s.cards;
    }
    d.submissions.push_back({p, Phase::kFinal, last, d.size() - 1});
  }
}

}  // namespace turnpoint::testing

#endif  // TURNPOINT_TESTS_FIXTURES_H_
