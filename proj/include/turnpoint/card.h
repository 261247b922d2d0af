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

#ifndef TURNPOINT_CARD_H_
#define TURNPOINT_CARD_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace turnpoint {

// The four card kinds of the selection task. The rule under test is
// "vowel on one side implies even number on the other".
enum class CardRole : std::uint8_t { kVowel, kConsonant, kEven, kOdd };

std::string_view to_string(CardRole role);
std::optional<CardRole> parse_role(std::string_view name);

// Role implied by a surface label: letters are vowels or consonants, integers
// are even or odd. nullopt for anything else.
std::optional<CardRole> infer_role(std::string_view label);

// True when the card must be turned to test the rule (the vowel and the odd
// number).
constexpr bool must_turn(CardRole role) {
  return role == CardRole::kVowel || role == CardRole::kOdd;
}

struct Card {
  std::string label;
  CardRole role;

  bool operator==(const Card&) const = default;
};

// The four cards dealt to one group, in presentation order.
class CardInventory {
 public:
  CardInventory() = default;
  explicit CardInventory(std::array<Card, 4> cards) : cards_(std::move(cards)) {}

  const Card& operator[](std::size_t i) const { return cards_[i]; }
  const std::array<Card, 4>& cards() const { return cards_; }

  // Slot of the card with this label; exact match first, then
  // case-insensitive.
  std::optional<int> index_of(std::string_view label) const;

  // Empty when the inventory holds exactly one card per role with distinct
  // labels; otherwise a description of the broken rule.
  std::optional<std::string> problem() const;

  bool operator==(const CardInventory&) const = default;

 private:
  std::array<Card, 4> cards_{};
};

// A subset of one inventory, stored as a 4-bit mask over the card slots.
class CardSet {
 public:
  constexpr CardSet() = default;
  static constexpr CardSet none() { return CardSet(); }
  static constexpr CardSet all() { return CardSet(0xF); }
  static constexpr CardSet from_mask(std::uint8_t mask) {
    return CardSet(static_cast<std::uint8_t>(mask & 0xF));
  }

  // Throws DataError naming the first label not in `inventory`.
  static CardSet from_labels(const std::vector<std::string>& labels,
                             const CardInventory& inventory);

  constexpr bool contains(int slot) const { return (mask_ >> slot) & 1U; }
  constexpr void insert(int slot) {
    mask_ = static_cast<std::uint8_t>(mask_ | (1U << slot));
  }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::uint8_t mask() const { return mask_; }
  int size() const;

  std::vector<std::string> labels(const CardInventory& inventory) const;

  constexpr CardSet operator|(CardSet other) const {
    return CardSet(static_cast<std::uint8_t>(mask_ | other.mask_));
  }
  bool operator==(const CardSet&) const = default;

 private:
  constexpr explicit CardSet(std::uint8_t mask) : mask_(mask) {}
  std::uint8_t mask_ = 0;
};

}  // namespace turnpoint

#endif  // TURNPOINT_CARD_H_
