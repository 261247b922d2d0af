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

#include "turnpoint/wason.h"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "json.hpp"
#include "turnpoint/error.h"

namespace turnpoint {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

double score_solution(CardSet selected, const CardInventory& cards) {
  int correct = 0;
  for (int i = 0; i < 4; ++i) {
    if (selected.contains(i) == must_turn(cards[i].role)) ++correct;
  }
  return correct / 4.0;
}

double score_solution(const std::vector<std::string>& selected,
                      const CardInventory& cards) {
  return score_solution(CardSet::from_labels(selected, cards), cards);
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open lexicon '" + path.string() + "'");
  Lexicon lex;
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.contains("placeholder_prefix")) {
      lex.placeholder_prefix = j["placeholder_prefix"].get<std::string>();
    }
    if (j.contains("card_tokens")) {
      for (const auto& [token, label] : j["card_tokens"].items()) {
        lex.card_tokens[lower(token)] = label.get<std::string>();
      }
    }
    const auto words = [&](const char* key, std::set<std::string>& out) {
      if (!j.contains(key)) return;
      out.clear();
      for (const auto& w : j[key]) out.insert(lower(w.get<std::string>()));
    };
    words("all_words", lex.all_words);
    words("none_words", lex.none_words);
    if (j.contains("bare_labels")) lex.bare_labels = j["bare_labels"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("lexicon '" + path.string() + "': " + e.what());
  }
  return lex;
}

Mention detect_card_mentions(const Utterance& utterance, const Lexicon& lexicon,
                             const CardInventory& cards) {
  const std::string prefix = lower(lexicon.placeholder_prefix);
  CardSet mentioned;
  for (const std::string& token : utterance.tokens) {
    const std::string low = lower(token);
    if (lexicon.all_words.contains(low)) return {MentionKind::kAll, CardSet::all()};
    if (lexicon.none_words.contains(low)) return {MentionKind::kNone, CardSet::none()};

    std::optional<int> slot;
    if (!prefix.empty() && low.size() > prefix.size() + 1 && low.starts_with(prefix) &&
        low.back() == '>') {
      slot = cards.index_of(token.substr(prefix.size(), token.size() - prefix.size() - 1));
    } else if (auto it = lexicon.card_tokens.find(low); it != lexicon.card_tokens.end()) {
      slot = cards.index_of(it->second);
    } else if (lexicon.bare_labels) {
      for (int i = 0; i < 4; ++i) {
        if (cards[i].label == token) slot = i;
      }
    }
    if (slot) mentioned.insert(*slot);
  }
  if (mentioned.empty()) return {};
  return {MentionKind::kCards, mentioned};
}

SolutionTracker::SolutionTracker(const Dialogue& dialogue, const Lexicon& lexicon,
                                 UpdateRule rule)
    : dialogue_(dialogue), lexicon_(lexicon), rule_(rule) {
  for (const Submission& s : dialogue.submissions) {
    if (s.phase == Phase::kSolo) solutions_[s.participant] = s.cards;
  }
  for (const Utterance& u : dialogue.utterances) {
    if (!solutions_.contains(u.participant)) {
      throw InvariantError(dialogue.id, "participant '" + u.participant +
                                            "' speaks without a solo submission");
    }
  }
}

void SolutionTracker::observe(const Utterance& utterance) {
  const Mention m = detect_card_mentions(utterance, lexicon_, dialogue_.cards);
  if (m.kind == MentionKind::kNoMention) return;
  auto it = solutions_.find(utterance.participant);
  if (it == solutions_.end()) {
    throw InvariantError(dialogue_.id, "participant '" + utterance.participant +
                                           "' speaks without a solo submission");
  }
  if (rule_ == UpdateRule::kUnion && m.kind == MentionKind::kCards) {
    it->second = it->second | m.cards;
  } else {
    it->second = m.cards;
  }
}

double SolutionTracker::score(const std::string& participant) const {
  auto it = solutions_.find(participant);
  if (it == solutions_.end()) return 0.0;
  return score_solution(it->second, dialogue_.cards);
}

double SolutionTracker::group_performance() const {
  if (solutions_.empty()) return 0.0;
  double total = 0.0;
  for (const auto& [participant, cards] : solutions_) {
    total += score_solution(cards, dialogue_.cards);
  }
  return total / static_cast<double>(solutions_.size());
}

std::vector<double> track(const Dialogue& dialogue, const Lexicon& lexicon,
                          UpdateRule rule) {
  SolutionTracker tracker(dialogue, lexicon, rule);
  std::vector<double> signal;
  signal.reserve(dialogue.utterances.size());
  for (const Utterance& u : dialogue.utterances) {
    tracker.observe(u);
    signal.push_back(tracker.group_performance());
  }
  return signal;
}

}  // namespace turnpoint
