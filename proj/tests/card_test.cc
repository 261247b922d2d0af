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

#include "turnpoint/card.h"

#include <gtest/gtest.h>

#include "fixtures.h"
#include "turnpoint/error.h"

namespace turnpoint {
namespace {

using testing::standard_cards;

TEST(CardRole, InferredFromLabel) {
  EXPECT_EQ(infer_role("A"), CardRole::kVowel);
  EXPECT_EQ(infer_role("e"), CardRole::kVowel);
  EXPECT_EQ(infer_role("K"), CardRole::kConsonant);
  EXPECT_EQ(infer_role("2"), CardRole::kEven);
  EXPECT_EQ(infer_role("7"), CardRole::kOdd);
  EXPECT_EQ(infer_role(""), std::nullopt);
  EXPECT_EQ(infer_role("7a"), std::nullopt);
}

TEST(CardRole, RoundTripsNames) {
  for (CardRole r : {CardRole::kVowel, CardRole::kConsonant, CardRole::kEven, CardRole::kOdd}) {
    EXPECT_EQ(parse_role(to_string(r)), r);
  }
  EXPECT_EQ(parse_role("joker"), std::nullopt);
}

TEST(CardRole, MustTurnVowelAndOdd) {
  EXPECT_TRUE(must_turn(CardRole::kVowel));
  EXPECT_TRUE(must_turn(CardRole::kOdd));
  EXPECT_FALSE(must_turn(CardRole::kConsonant));
  EXPECT_FALSE(must_turn(CardRole::kEven));
}

TEST(CardInventory, ProblemDetection) {
  EXPECT_EQ(standard_cards().problem(), std::nullopt);
  CardInventory two_vowels({Card{"A", CardRole::kVowel}, Card{"E", CardRole::kVowel},
                            Card{"2", CardRole::kEven}, Card{"7", CardRole::kOdd}});
  EXPECT_TRUE(two_vowels.problem().has_value());
  CardInventory duplicate({Card{"A", CardRole::kVowel}, Card{"A", CardRole::kConsonant},
                           Card{"2", CardRole::kEven}, Card{"7", CardRole::kOdd}});
  EXPECT_TRUE(duplicate.problem().has_value());
}

TEST(CardInventory, IndexOfPrefersExactThenCaseless) {
  const auto cards = standard_cards();
  EXPECT_EQ(cards.index_of("K"), 1);
  EXPECT_EQ(cards.index_of("k"), 1);
  EXPECT_EQ(cards.index_of("Q"), std::nullopt);
}

TEST(CardSet, LabelsRoundTrip) {
  const auto cards = standard_cards();
  const CardSet s = CardSet::from_labels({"7", "A"}, cards);
  EXPECT_EQ(s.mask(), testing::kA | testing::k7);
  EXPECT_EQ(s.size(), 2);
  EXPECT_EQ(s.labels(cards), (std::vector<std::string>{"A", "7"}));
  EXPECT_THROW(CardSet::from_labels({"Q"}, cards), DataError);
}

TEST(CardSet, MaskAlgebra) {
  EXPECT_TRUE(CardSet::none().empty());
  EXPECT_EQ(CardSet::all().size(), 4);
  EXPECT_EQ(CardSet::from_mask(0xFF), CardSet::all());
  EXPECT_EQ(CardSet::from_mask(1) | CardSet::from_mask(8), CardSet::from_mask(9));
  CardSet s;
  s.insert(2);
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(1));
}

}  // namespace
}  // namespace turnpoint
