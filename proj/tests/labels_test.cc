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

#include "turnpoint/labels.h"

#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.h"
#include "turnpoint/error.h"
#include "turnpoint/rng.h"

namespace turnpoint {
namespace {

using namespace testing;

TEST(GoldLabels, FigureOneDialogue) {
  Dialogue d = dialogue("fig1", {{"U1", "a"}, {"U2", "b"}, {"U1", "c"}, {"U3", "d"},
                                 {"U2", "e"}, {"U1", "f"}});
  add_finals(d);
  d.gold_change_of_mind = std::vector<int>{2, 5};
  const LabelSequence l = gold_labels(d);
  EXPECT_EQ(l.positives(), (std::vector<int>{1, 4}));
  EXPECT_EQ(l.provenance, Provenance::kGold);
  EXPECT_EQ(l.events, 2);
  EXPECT_EQ(l.attributed, 2);
}

TEST(GoldLabels, ChangeAtFirstUtteranceIsSkipped) {
  Dialogue d = dialogue("g", {{"U1", "a"}, {"U2", "b"}});
  add_finals(d);
  d.gold_change_of_mind = std::vector<int>{0};
  const LabelSequence l = gold_labels(d);
  EXPECT_TRUE(l.positives().empty());
  EXPECT_EQ(l.skipped, 1);
}

TEST(GoldLabels, SharedCauseLabeledOnce) {
  Dialogue d = dialogue("g", {{"U1", "a"}, {"U2", "b"}, {"U2", "c"}});
  add_finals(d);
  d.gold_change_of_mind = std::vector<int>{1, 2};
  const LabelSequence l = gold_labels(d);
  EXPECT_EQ(l.labels, (std::vector<std::uint8_t>{1, 0, 0}));
  EXPECT_EQ(l.attributed, 2);
}

TEST(GoldLabels, UnannotatedIsUsageError) {
  Dialogue d = dialogue("g", {{"U1", "a"}});
  add_finals(d);
  EXPECT_THROW(gold_labels(d), UsageError);
}

TEST(WeakLabels, SubmitAfterOwnUtterance) {
  Dialogue d = dialogue("fig2", {{"U1", "a"}, {"U2", "b"}});
  d.submissions.push_back({"U2", Phase::kIntermediate, CardSet::from_mask(kA), 1});
  add_finals(d);
  const LabelSequence l = weak_labels(d);
  EXPECT_EQ(l.labels, (std::vector<std::uint8_t>{1, 0}));
  EXPECT_EQ(l.provenance, Provenance::kWeak);
}

TEST(WeakLabels, UnchangedSubmissionIsIgnored) {
  Dialogue d = dialogue("w", {{"U1", "a"}, {"U2", "b"}});
  d.submissions.push_back({"U2", Phase::kIntermediate, CardSet::from_mask(kA | k7), 1});
  add_finals(d);
  EXPECT_TRUE(weak_labels(d).positives().empty());
}

TEST(WeakLabels, TwoChangesAfterSameUtterance) {
  Dialogue d = dialogue("w", {{"U3", "a"}, {"U1", "b"}, {"U2", "c"}});
  d.submissions.push_back({"U1", Phase::kIntermediate, CardSet::from_mask(kA), 0});
  d.submissions.push_back({"U2", Phase::kIntermediate, CardSet::from_mask(k7), 0});
  add_finals(d);
  const LabelSequence l = weak_labels(d);
  EXPECT_EQ(l.labels, (std::vector<std::uint8_t>{1, 0, 0}));
  EXPECT_EQ(l.events, 2);
  EXPECT_EQ(l.attributed, 2);
}

TEST(WeakLabels, FinalComparedWithPreviousAnswer) {
  Dialogue d = dialogue("w", {{"U1", "a"}, {"U2", "b"}, {"U1", "c"}});
  d.submissions.push_back({"U1", Phase::kFinal, CardSet::from_mask(kK), 2});
  d.submissions.push_back({"U2", Phase::kFinal, CardSet::from_mask(kA | k7), 2});
  EXPECT_EQ(weak_labels(d).positives(), std::vector<int>{1});
}

// Random dialogues; every positive must be explained by a changed
// submission of another participant with no other-speaker turn in between.
TEST(WeakLabelsProperty, PositivesHaveAnExplainingChange) {
  Rng rng(17);
  const std::vector<std::string> people{"U1", "U2", "U3"};
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(uniform_index(rng, 10));
    std::vector<std::pair<std::string, std::string>> turns;
    for (int t = 0; t < n; ++t) turns.push_back({people[uniform_index(rng, 3)], "x"});
    Dialogue d = dialogue("p", turns);
    for (const auto& p : d.participants()) {
      int pos = -1;
      while (bernoulli(rng, 0.5)) {
        pos = std::min(n - 1, pos + 1 + static_cast<int>(uniform_index(rng, 3)));
        d.submissions.push_back(
            {p, Phase::kIntermediate, CardSet::from_mask(uniform_index(rng, 16)), pos});
      }
    }
    add_finals(d);
    validate(d);
    const LabelSequence l = weak_labels(d);
    EXPECT_EQ(l, weak_labels(d));
    for (int t : l.positives()) {
      bool explained = false;
      for (const auto& p : d.participants()) {
        if (p == d.utterances[t].participant) continue;
        CardSet previous;
        for (const auto& s : d.submissions) {
          if (s.participant != p) continue;
          if (s.phase != Phase::kSolo && !(s.cards == previous) && s.position >= t &&
              last_other_speaker(d, s.position, p) == t) {
            explained = true;
          }
          previous = s.cards;
        }
      }
      EXPECT_TRUE(explained) << "trial " << trial << " utterance " << t;
    }
  }
}

TEST(LastOtherSpeaker, Scan) {
  Dialogue d = dialogue("s", {{"U1", "a"}, {"U2", "b"}, {"U2", "c"}});
  EXPECT_EQ(last_other_speaker(d, 2, "U2"), 0);
  EXPECT_EQ(last_other_speaker(d, 2, "U1"), 2);
  EXPECT_EQ(last_other_speaker(d, 0, "U1"), -1);
}

TEST(LabelsFile, RoundTrip) {
  std::vector<LabelSequence> labels{{"a", {0, 1, 0}, Provenance::kGold, 1, 1, 0},
                                    {"b,c", {1}, Provenance::kWeak, 2, 1, 1}};
  std::stringstream io;
  write_labels(io, labels);
  EXPECT_EQ(read_labels(io, "mem"), labels);
  std::istringstream bad("{\"dialogue_id\": \"a\", \"labels\": [2]}\n");
  EXPECT_THROW(read_labels(bad, "mem"), DataError);
}

}  // namespace
}  // namespace turnpoint
