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

#include "turnpoint/corpus.h"

#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.h"
#include "json.hpp"
#include "turnpoint/error.h"
#include "turnpoint/synth.h"

namespace turnpoint {
namespace {

Corpus synth_corpus(int n, double annotated, std::uint64_t seed = 3) {
  SynthConfig c;
  c.n_dialogues = n;
  c.annotated_fraction = annotated;
  c.seed = seed;
  return generate(c).corpus;
}

std::string canonical(const Corpus& c) {
  std::ostringstream out;
  write_canonical(out, c);
  return out.str();
}

TEST(Tokenize, KeepsPlaceholders) {
  EXPECT_EQ(tokenize("  <MENTION> any ideas ?\t<CARD:A>\n"),
            (std::vector<std::string>{"<MENTION>", "any", "ideas", "?", "<CARD:A>"}));
  EXPECT_TRUE(tokenize("   ").empty());
}

TEST(Canonical, TwoDialoguesRoundTrip) {
  auto a = testing::dialogue("a", {{"P1", "hello"}, {"P2", "i put <CARD:A>"}});
  auto b = testing::dialogue("b", {{"P1", "x"}});
  testing::add_finals(a);
  testing::add_finals(b);
  b.gold_change_of_mind = std::vector<int>{};
  const Corpus c({a, b}, {Split::kTest, Split::kUnassigned});
  std::istringstream in(canonical(c));
  const Corpus back = read_canonical(in, "mem");
  EXPECT_EQ(back.size(), 2u);
  EXPECT_EQ(back, c);
}

TEST(Canonical, SynthRoundTripIsByteStable) {
  const Corpus c = make_splits(synth_corpus(30, 0.3), 1);
  const std::string first = canonical(c);
  std::istringstream in(first);
  EXPECT_EQ(canonical(read_canonical(in, "mem")), first);
}

TEST(Canonical, ThreeCardsNamesDialogue) {
  auto d = testing::dialogue("three-cards", {{"P1", "hi"}});
  testing::add_finals(d);
  auto j = nlohmann::json::parse(canonical(Corpus({d})));
  ASSERT_TRUE(j["cards"].is_array());
  j["cards"].erase(j["cards"].size() - 1);
  std::istringstream in(j.dump() + "\n");
  try {
    read_canonical(in, "mem");
    FAIL() << "expected an invariant error";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("three-cards"), std::string::npos);
  }
}

TEST(Canonical, MalformedLineIsParseError) {
  std::istringstream in("{\"id\": \n");
  EXPECT_THROW(read_canonical(in, "mem"), ParseError);
}

TEST(Canonical, UnknownFieldWarns) {
  auto d = testing::dialogue("d", {{"P1", "hi"}});
  testing::add_finals(d);
  auto j = nlohmann::json::parse(canonical(Corpus({d})));
  j["mood"] = "cheerful";
  std::istringstream in(j.dump() + "\n");
  Warnings w;
  read_canonical(in, "mem", &w);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_NE(w[0].find("mood"), std::string::npos);
}

TEST(Validate, Invariants) {
  auto ok = testing::dialogue("d", {{"P1", "a"}, {"P2", "b"}});
  testing::add_finals(ok);
  EXPECT_NO_THROW(validate(ok));

  auto no_final = testing::dialogue("d", {{"P1", "a"}});
  EXPECT_THROW(validate(no_final), InvariantError);

  auto gapped = ok;
  gapped.utterances[1].index = 5;
  EXPECT_THROW(validate(gapped), InvariantError);

  auto bad_gold = ok;
  bad_gold.gold_change_of_mind = std::vector<int>{9};
  EXPECT_THROW(validate(bad_gold), InvariantError);
}

TEST(CorpusInvariants, DuplicateIdsAndAnnotatedTrain) {
  auto d = testing::dialogue("d", {{"P1", "a"}});
  testing::add_finals(d);
  EXPECT_THROW(Corpus({d, d}), InvariantError);
  auto g = d;
  g.gold_change_of_mind = std::vector<int>{};
  EXPECT_THROW(Corpus({g}, {Split::kTrain}), InvariantError);
}

TEST(Splits, FortyTestTenValidation) {
  const Corpus c = make_splits(synth_corpus(50, 1.0), 7);
  EXPECT_EQ(c.indices(Split::kTest).size(), 40u);
  EXPECT_EQ(c.indices(Split::kValidation).size(), 10u);
  EXPECT_TRUE(c.indices(Split::kTrain).empty());
}

TEST(Splits, TrainTakesUnannotatedWithIntermediate) {
  const Corpus raw = synth_corpus(80, 0.4);
  const Corpus c = make_splits(raw, 2);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Dialogue& d = c[i];
    if (d.annotated()) {
      EXPECT_TRUE(c.split(i) == Split::kTest || c.split(i) == Split::kValidation);
    } else if (d.has_intermediate()) {
      EXPECT_EQ(c.split(i), Split::kTrain);
    } else {
      EXPECT_EQ(c.split(i), Split::kUnassigned);
    }
  }
}

TEST(Splits, DeterministicAndSeedSensitive) {
  const Corpus raw = synth_corpus(60, 0.5);
  EXPECT_EQ(make_splits(raw, 11).splits(), make_splits(raw, 11).splits());
  EXPECT_NE(make_splits(raw, 11).splits(), make_splits(raw, 12).splits());
}

TEST(Splits, NeedsTwoAnnotated) {
  EXPECT_THROW(make_splits(synth_corpus(10, 0.0), 0), DataError);
}

constexpr const char* kTabular =
    "dialogue_id,participant,type,text,cards,annotation\n"
    "d1,,cards,,\"A,K,2,7\",\n"
    "d1,P1,solo,,\"A,2\",\n"
    "d1,P2,solo,,A,\n"
    "d1,SYS,join,,,\n"
    "d1,P1,utterance,\"i think <CARD:A> and <CARD:7>\",,other\n"
    "d1,P2,utterance,ok then,,change_of_mind\n"
    "d1,P2,submit,,\"A,7\",\n"
    "d1,P1,submit,,\"A,7\",\n"
    "d1,P2,submit,,\"A,7\",\n";

TEST(Tabular, ReadsEventsAndPhases) {
  std::istringstream in(kTabular);
  Warnings w;
  const Corpus c = read_tabular(in, "t.csv", {}, &w);
  ASSERT_EQ(c.size(), 1u);
  const Dialogue& d = c[0];
  EXPECT_EQ(d.size(), 2);
  EXPECT_EQ(d.utterances[0].tokens.size(), 5u);
  EXPECT_EQ(d.gold_change_of_mind, std::vector<int>{1});
  ASSERT_EQ(d.submissions.size(), 5u);
  EXPECT_EQ(d.submissions[2].phase, Phase::kIntermediate);
  EXPECT_EQ(d.submissions[2].position, 1);
  EXPECT_EQ(d.submissions[3].phase, Phase::kFinal);
  EXPECT_EQ(d.submissions[4].phase, Phase::kFinal);
  EXPECT_EQ(w.size(), 1u);

  const CorpusStats s = corpus_stats(c);
  EXPECT_EQ(s.dialogues, 1);
  EXPECT_EQ(s.utterances, 2);
  EXPECT_EQ(s.annotated, 1);
  EXPECT_EQ(s.annotated_changes, 1);
  EXPECT_DOUBLE_EQ(s.avg_group_size, 2.0);
}

TEST(Tabular, BadInventoryReportsLine) {
  std::istringstream in(
      "dialogue_id,participant,type,text,cards,annotation\n"
      "d1,,cards,,\"A,K,2\",\n");
  try {
    read_tabular(in, "t.csv", {});
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("t.csv:2"), std::string::npos) << e.what();
  }
}

TEST(Stats, CountsAcrossSynthCorpus) {
  const Corpus c = synth_corpus(40, 0.25);
  const CorpusStats s = corpus_stats(c);
  int utterances = 0, annotated = 0;
  for (const auto& d : c.dialogues()) {
    utterances += d.size();
    annotated += d.annotated();
  }
  EXPECT_EQ(s.dialogues, 40);
  EXPECT_EQ(s.utterances, utterances);
  EXPECT_EQ(s.annotated, annotated);
}

}  // namespace
}  // namespace turnpoint
