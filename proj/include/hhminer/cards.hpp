// Copyright 2026 The hhminer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HHMINER_CARDS_HPP_
#define HHMINER_CARDS_HPP_

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hhminer {

enum class Suit : std::uint8_t { kClubs = 0, kDiamonds = 1, kHearts = 2, kSpades = 3 };

// A playing card. Rank runs 2..14 (ace high). The dense index
// (rank - 2) * 4 + suit enumerates the 52-card deck.
class Card {
 public:
  constexpr Card() = default;
  constexpr Card(int rank, Suit suit)
      : index_(static_cast<std::uint8_t>((rank - 2) * 4 + static_cast<int>(suit))) {}

  static constexpr Card from_index(int index) {
    Card c;
    c.index_ = static_cast<std::uint8_t>(index);
    return c;
  }

  constexpr int rank() const { return index_ / 4 + 2; }
  constexpr Suit suit() const { return static_cast<Suit>(index_ % 4); }
  constexpr int index() const { return index_; }

  // Bit position in a 64-bit card mask: 16 bits per suit, rank-2 within.
  constexpr int mask_bit() const { return static_cast<int>(suit()) * 16 + (rank() - 2); }
  constexpr std::uint64_t mask() const { return std::uint64_t{1} << mask_bit(); }

  constexpr auto operator<=>(const Card&) const = default;

 private:
  std::uint8_t index_ = 0;
};

inline constexpr int kDeckSize = 52;

// "As", "Td", "9c"; "10h" is accepted as an alias for "Th".
Card parse_card(std::string_view text);
std::string to_string(Card card);

// Whitespace-separated cards, e.g. "As Kh"; brackets and commas are ignored.
std::vector<Card> parse_cards(std::string_view text);
std::string to_string(std::span<const Card> cards);

// Mask of the given cards; throws DuplicateCard on repeats.
std::uint64_t card_mask(std::span<const Card> cards);

// Throws DuplicateCard if any card occurs twice across the groups.
void require_distinct(std::initializer_list<std::span<const Card>> groups);

}  // namespace hhminer

#endif  // HHMINER_CARDS_HPP_
