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

#include <gtest/gtest.h>

#include <numeric>

#include "fixtures.h"
#include "turnpoint/error.h"
#include "turnpoint/rng.h"
#include "turnpoint/synth.h"

namespace turnpoint {
namespace {

using namespace testing;

TEST(ScoreSolution, Examples) {
  const auto cards = standard_cards();
  EXPECT_DOUBLE_EQ(score_solution(CardSet::from_mask(kA | k7), cards), 1.0);
  EXPECT_DOUBLE_EQ(score_solution(CardSet::from_mask(kA | k2), cards), 0.5);
  EXPECT_DOUBLE_EQ(score_solution(CardSet::none(), cards), 0.5);
  EXPECT_DOUBLE_EQ(score_solution(CardSet::all(), cards), 0.5);
  EXPECT_DOUBLE_EQ(score_solution(std::vector<std::string>{"K", "2"}, cards), 0.0);
  EXPECT_THROW(score_solution(std::vector<std::string>{"Q"}, cards), DataError);
}

TEST(ScoreSolution, AgreesWithDecisionCount) {
  const auto cards = standard_cards();
  for (int m = 0; m < 16; ++m) {
    int correct = 0;
    for (int slot = 0; slot < 4; ++slot) {
      correct += (((m >> slot) & 1) != 0) == must_turn(cards[slot].role);
    }
    EXPECT_DOUBLE_EQ(score_solution(CardSet::from_mask(m), cards), correct / 4.0);
  }
}

Utterance utt(const std::string& text) { return {0, "P1", tokenize(text)}; }

TEST(Mentions, Examples) {
  const Lexicon lex;
  const auto cards = standard_cards();
  EXPECT_EQ(detect_card_mentions(utt("i put <CARD:A> and <CARD:7>"), lex, cards),
            (Mention{MentionKind::kCards, CardSet::from_mask(kA | k7)}));
  EXPECT_EQ(detect_card_mentions(utt("i chose all 4 cards so clearly mine was n't the one"),
                                 lex, cards)
                .kind,
            MentionKind::kAll);
  EXPECT_EQ(detect_card_mentions(utt("what do they exactly mean by turn"), lex, cards).kind,
            MentionKind::kNoMention);
}

TEST(Mentions, KeywordsAndUnknownCards) {
  const Lexicon lex;
  const auto cards = standard_cards();
  EXPECT_EQ(detect_card_mentions(utt("none or all ?"), lex, cards).kind, MentionKind::kNone);
  EXPECT_EQ(detect_card_mentions(utt("<card:k> maybe"), lex, cards),
            (Mention{MentionKind::kCards, CardSet::from_mask(kK)}));
  EXPECT_EQ(detect_card_mentions(utt("<CARD:Q>"), lex, cards).kind, MentionKind::kNoMention);
  EXPECT_EQ(detect_card_mentions(utt("flip 7"), lex, cards).kind, MentionKind::kNoMention);
  Lexicon bare;
  bare.bare_labels = true;
  bare.card_tokens["seven"] = "7";
  EXPECT_EQ(detect_card_mentions(utt("flip 2 and Seven"), bare, cards),
            (Mention{MentionKind::kCards, CardSet::from_mask(k2 | k7)}));
}

TEST(Track, ReplaceRaisesGroupScore) {
  Dialogue d = dialogue("t", {{"P1", "turn <CARD:A> and <CARD:7>"}, {"P2", "sure"}});
  d.submissions = {{"P1", Phase::kSolo, CardSet::from_mask(kA | k2), -1},
                   {"P2", Phase::kSolo, CardSet::from_mask(kA | k7), -1}};
  add_finals(d);
  const Lexicon lex;
  SolutionTracker tracker(d, lex);
  EXPECT_DOUBLE_EQ(tracker.score("P1"), 0.5);
  EXPECT_DOUBLE_EQ(tracker.group_performance(), 0.75);
  tracker.observe(d.utterances[0]);
  EXPECT_DOUBLE_EQ(tracker.score("P1"), 1.0);
  EXPECT_DOUBLE_EQ(tracker.group_performance(), 1.0);
  EXPECT_EQ(track(d, lex), (std::vector<double>{1.0, 1.0}));
}

TEST(Track, NoMentionsIsConstant) {
  Dialogue d = dialogue("t", {{"P1", "hi"}, {"P2", "hello"}, {"P1", "so"}});
  d.submissions = {{"P1", Phase::kSolo, CardSet::from_mask(kA), -1},
                   {"P2", Phase::kSolo, CardSet::from_mask(kA | k7), -1}};
  add_finals(d);
  EXPECT_EQ(track(d, Lexicon{}), std::vector<double>(3, 0.875));
}

TEST(Track, NoneEmptiesTheSpeaker) {
  Dialogue d = dialogue("t", {{"P1", "none of them"}});
  add_finals(d);
  SolutionTracker tracker(d, Lexicon{});
  tracker.observe(d.utterances[0]);
  EXPECT_TRUE(tracker.solutions().at("P1").empty());
  EXPECT_DOUBLE_EQ(tracker.score("P1"), 0.5);
}

TEST(Track, UnionAddsCards) {
  Dialogue d = dialogue("t", {{"P1", "also <CARD:K>"}}, kA);
  add_finals(d);
  SolutionTracker tracker(d, Lexicon{}, UpdateRule::kUnion);
  tracker.observe(d.utterances[0]);
  EXPECT_EQ(tracker.solutions().at("P1"), CardSet::from_mask(kA | kK));
}

TEST(Track, SpeakerWithoutSoloIsInvariantError) {
  Dialogue d = dialogue("t", {{"P1", "hi"}});
  d.submissions.clear();
  EXPECT_THROW(SolutionTracker(d, Lexicon{}), InvariantError);
}

TEST(TrackProperty, BoundedReplayableAndMean) {
  SynthConfig c;
  c.n_dialogues = 40;
  c.seed = 8;
  const Corpus corpus = generate(c).corpus;
  const Lexicon lex;
  for (const auto& d : corpus.dialogues()) {
    const auto signal = track(d, lex);
    ASSERT_EQ(static_cast<int>(signal.size()), d.size());
    EXPECT_EQ(signal, track(d, lex));
    SolutionTracker tracker(d, lex);
    for (int t = 0; t < d.size(); ++t) {
      tracker.observe(d.utterances[t]);
      double mean = 0.0;
      for (const auto& [p, cards] : tracker.solutions()) mean += score_solution(cards, d.cards);
      mean /= static_cast<double>(tracker.solutions().size());
      EXPECT_NEAR(signal[t], mean, 1e-15);
      EXPECT_GE(signal[t], 0.0);
      EXPECT_LE(signal[t], 1.0);
      if (t > 0 && detect_card_mentions(d.utterances[t], lex, d.cards).kind ==
                       MentionKind::kNoMention) {
        EXPECT_EQ(signal[t], signal[t - 1]);
      }
    }
  }
}

}  // namespace
}  // namespace turnpoint
