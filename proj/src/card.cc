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

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>

#include "turnpoint/error.h"

namespace turnpoint {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::string_view to_string(CardRole role) {
  switch (role) {
    case CardRole::kVowel:
      return "vowel";
    case CardRole::kConsonant:
      return "consonant";
    case CardRole::kEven:
      return "even";
    case CardRole::kOdd:
      return "odd";
  }
  return "?";
}

std::optional<CardRole> parse_role(std::string_view name) {
  for (CardRole r : {CardRole::kVowel, CardRole::kConsonant, CardRole::kEven,
                     CardRole::kOdd}) {
    if (name == to_string(r)) return r;
  }
  return std::nullopt;
}

std::optional<CardRole> infer_role(std::string_view label) {
  if (label.empty()) return std::nullopt;
  if (label.size() == 1 && std::isalpha(static_cast<unsigned char>(label[0]))) {
    const char c = static_cast<char>(
        std::toupper(static_cast<unsigned char>(label[0])));
    const bool vowel = c == 'A' || c == 'E' || c == 'I' || c == 'O' || c == 'U';
    return vowel ? CardRole::kVowel : CardRole::kConsonant;
  }
  long long value = 0;
  const auto* end = label.data() + label.size();
  auto [ptr, ec] = std::from_chars(label.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value % 2 == 0 ? CardRole::kEven : CardRole::kOdd;
}

std::optional<int> CardInventory::index_of(std::string_view label) const {
  for (int i = 0; i < 4; ++i) {
    if (cards_[i].label == label) return i;
  }
  for (int i = 0; i < 4; ++i) {
    if (iequals(cards_[i].label, label)) return i;
  }
  return std::nullopt;
}

std::optional<std::string> CardInventory::problem() const {
  std::array<int, 4> per_role{};
  for (int i = 0; i < 4; ++i) {
    if (cards_[i].label.empty()) return "card " + std::to_string(i) + " has an empty label";
    ++per_role[static_cast<int>(cards_[i].role)];
    for (int j = 0; j < i; ++j) {
      if (iequals(cards_[i].label, cards_[j].label)) {
        return "duplicate card label '" + cards_[i].label + "'";
      }
    }
  }
  for (int r = 0; r < 4; ++r) {
    if (per_role[r] != 1) {
      return "cards must contain exactly one " +
             std::string(to_string(static_cast<CardRole>(r))) + " card, found " +
             std::to_string(per_role[r]);
    }
  }
  return std::nullopt;
}

CardSet CardSet::from_labels(const std::vector<std::string>& labels,
                             const CardInventory& inventory) {
  CardSet set;
  for (const auto& label : labels) {
    auto slot = inventory.index_of(label);
    if (!slot) throw DataError("card '" + label + "' is not in the inventory");
    set.insert(*slot);
  }
  return set;
}

int CardSet::size() const { return std::popcount(static_cast<unsigned>(mask_)); }

std::vector<std::string> CardSet::labels(const CardInventory& inventory) const {
  std::vector<std::string> out;
  for (int i = 0; i < 4; ++i) {
    if (contains(i)) out.push_back(inventory[i].label);
  }
  return out;
}

}  // namespace turnpoint
