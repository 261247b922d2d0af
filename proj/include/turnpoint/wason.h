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

#ifndef TURNPOINT_WASON_H_
#define TURNPOINT_WASON_H_

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "turnpoint/card.h"
#include "turnpoint/corpus.h"

namespace turnpoint {

// Fraction of the four turn/don't-turn decisions that agree with the correct
// answer (turn the vowel and the odd number).
double score_solution(CardSet selected, const CardInventory& cards);

// Label-based overload; throws DataError for a label outside `cards`.
double score_solution(const std::vector<std::string>& selected,
                      const CardInventory& cards);

// Maps utterance tokens to card identities and to the "all"/"none" keywords.
struct Lexicon {
  // Tokens of the form <prefix>LABEL> name a card, e.g. <CARD:A>. Matched
  // case-insensitively.
  std::string placeholder_prefix = "<CARD:";
  // Lowercased token -> card label, e.g. "ace" -> "A".
  std::map<std::string, std::string> card_tokens;
  std::set<std::string> all_words{"all"};
  std::set<std::string> none_words{"none"};
  // Also treat a token equal to a card label (digits, or letters in the same
  // case) as a mention. Off by default because "a" and "i" are common words.
  bool bare_labels = false;

  // JSON file with any of: placeholder_prefix, card_tokens (object),
  // all_words, none_words, bare_labels.
  static Lexicon load(const std::filesystem::path& path);
};

enum class MentionKind { kNoMention, kCards, kAll, kNone };

struct Mention {
  MentionKind kind = MentionKind::kNoMention;
  CardSet cards;

  bool operator==(const Mention&) const = default;
};

// The keywords win over card mentions in the same utterance; between "all"
// and "none" the first to occur wins. Mentions of cards outside the
// inventory are ignored.
Mention detect_card_mentions(const Utterance& utterance, const Lexicon& lexicon,
                             const CardInventory& cards);

// How a mention changes the speaker's recorded solution.
enum class UpdateRule {
  kReplace,  // the mentioned set becomes the solution
  kUnion,    // mentioned cards are added to the solution
};

// Rule-based estimate of each participant's current answer, seeded from the
// solo submissions and revised whenever a speaker mentions cards.
class SolutionTracker {
 public:
  // Throws InvariantError if a speaker has no solo submission.
  SolutionTracker(const Dialogue& dialogue, const Lexicon& lexicon,
                  UpdateRule rule = UpdateRule::kReplace);

  void observe(const Utterance& utterance);

  double group_performance() const;
  double score(const std::string& participant) const;
  const std::map<std::string, CardSet>& solutions() const { return solutions_; }

 private:
  const Dialogue& dialogue_;
  const Lexicon& lexicon_;
  UpdateRule rule_;
  std::map<std::string, CardSet> solutions_;
};

// Group performance after each utterance; one value per utterance.
std::vector<double> track(const Dialogue& dialogue, const Lexicon& lexicon,
                          UpdateRule rule = UpdateRule::kReplace);

}  // namespace turnpoint

#endif  // TURNPOINT_WASON_H_
