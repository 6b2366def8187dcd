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

#include "hhminer/cards.hpp"

#include <cctype>

#include "hhminer/error.hpp"

namespace hhminer {
namespace {

constexpr std::string_view kRankChars = "23456789TJQKA";
constexpr std::string_view kSuitChars = "cdhs";

}  // namespace

Card parse_card(std::string_view text) {
  std::string_view t = text;
  int rank = 0;
  char suit_char = 0;
  if (text.size() == 3 && text[0] == '1' && text[1] == '0') {
    rank = 10;
    suit_char = text[2];
  } else if (t.size() == 2) {
    auto pos = kRankChars.find(static_cast<char>(std::toupper(static_cast<unsigned char>(t[0]))));
    if (pos == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidArgument, "bad card rank in '" + std::string(text) + "'");
    }
    rank = static_cast<int>(pos) + 2;
    suit_char = t[1];
  } else {
    throw Error(ErrorCode::kInvalidArgument, "bad card '" + std::string(text) + "'");
  }
  auto s = kSuitChars.find(static_cast<char>(std::tolower(static_cast<unsigned char>(suit_char))));
  if (s == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument, "bad card suit in '" + std::string(text) + "'");
  }
  return Card(rank, static_cast<Suit>(s));
}

std::string to_string(Card card) {
  std::string out;
  out += kRankChars[card.rank() - 2];
  out += kSuitChars[static_cast<int>(card.suit())];
  return out;
}

std::vector<Card> parse_cards(std::string_view text) {
  std::vector<Card> cards;
  std::size_t i = 0;
  auto is_sep = [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '[' || c == ']' || c == ',';
  };
  while (i < text.size()) {
    while (i < text.size() && is_sep(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j])) ++j;
    if (j > i) {
      std::string_view token = text.substr(i, j - i);
      // Accept run-together cards such as "AsKh".
      if (token.size() % 2 == 0 && token.size() > 2 && token.find("10") == std::string_view::npos) {
        for (std::size_t k = 0; k < token.size(); k += 2) cards.push_back(parse_card(token.substr(k, 2)));
      } else {
        cards.push_back(parse_card(token));
      }
    }
    i = j;
  }
  return cards;
}

std::string to_string(std::span<const Card> cards) {
  std::string out;
  for (std::size_t i = 0; i < cards.size(); ++i) {
    if (i) out += ' ';
    out += to_string(cards[i]);
  }
  return out;
}

std::uint64_t card_mask(std::span<const Card> cards) {
  std::uint64_t mask = 0;
  for (Card c : cards) {
    if (mask & c.mask()) throw Error(ErrorCode::kDuplicateCard, "duplicate card " + to_string(c));
    mask |= c.mask();
  }
  return mask;
}

void require_distinct(std::initializer_list<std::span<const Card>> groups) {
  std::uint64_t mask = 0;
  for (auto group : groups) {
    for (Card c : group) {
      if (mask & c.mask()) throw Error(ErrorCode::kDuplicateCard, "duplicate card " + to_string(c));
      mask |= c.mask();
    }
  }
}

}  // namespace hhminer
