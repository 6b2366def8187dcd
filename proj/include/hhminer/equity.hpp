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

// Hand ranking, hand strength, hand potential and win probability.

#ifndef HHMINER_EQUITY_HPP_
#define HHMINER_EQUITY_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string_view>

#include "hhminer/cards.hpp"

namespace hhminer {

enum class HandCategory : std::uint8_t {
  kHighCard = 0,
  kPair,
  kTwoPair,
  kTrips,
  kStraight,
  kFlush,
  kFullHouse,
  kQuads,
  kStraightFlush,
};
std::string_view hand_category_name(HandCategory c);

struct HandRank {
  HandCategory category = HandCategory::kHighCard;
  // Ranks that break ties within the category, most significant first,
  // zero-padded.
  std::array<std::uint8_t, 5> tiebreak{};

  auto operator<=>(const HandRank&) const = default;
};

// Packed, totally ordered hand value for 5..7 cards given as a card mask
// (see Card::mask). Larger is better. No validation.
std::uint32_t evaluate_mask(std::uint64_t mask);
HandRank decode_hand_value(std::uint32_t value);

// Best five-card hand among 5..7 distinct cards.
// Throws WrongCardCount, DuplicateCard.
HandRank best5_rank(std::span<const Card> cards);

// Probability that `hole` beats a single random opponent holding on this
// board (ties count half), raised to the power n_opponents.
// Throws DuplicateCard, WrongCardCount, PreFlopBoard (empty board).
double hand_strength(std::span<const Card> hole, std::span<const Card> board, int n_opponents);

struct HandPotential {
  double ppot = 0.0;
  double npot = 0.0;
};

// Positive/negative potential by lookahead to the river. Opponent holdings
// are enumerated exhaustively; future boards are sampled without replacement
// when there are more than `lookahead_cap` of them (1081 two-card runouts
// from the flop, 46 rivers from the turn). River boards give (0, 0).
// Throws DuplicateCard, WrongCardCount, WrongBoardSize.
HandPotential hand_potential(std::span<const Card> hole, std::span<const Card> board,
                             std::size_t lookahead_cap = 1000, std::uint64_t seed = 0);

// hs * (1 - npot) + (1 - hs) * ppot, clamped to [0, 1].
// Throws OutOfRangeInput when an argument lies outside [0, 1].
double win_probability(double hs, double ppot, double npot);

// Seeded Monte Carlo showdown equity against n_opponents random holdings:
// win 1, k-way tie 1/k, loss 0. Suit-isomorphic holdings give identical
// estimates for the same seed.
// Throws DuplicateCard, WrongCardCount, InvalidArgument.
double preflop_win_prob(std::span<const Card> hole, int n_opponents, int samples, std::uint64_t seed);

struct EquityConfig {
  int preflop_samples = 2000;
  std::size_t lookahead_cap = 1000;
};

struct EquityResult {
  double hs = 0.0;
  double ppot = 0.0;
  double npot = 0.0;
  double win_prob = 0.0;
};

// Post-flop equity bundle: HS for n_opponents, potential, and win_prob.
EquityResult postflop_equity(std::span<const Card> hole, std::span<const Card> board, int n_opponents,
                             const EquityConfig& config, std::uint64_t seed);

}  // namespace hhminer

#endif  // HHMINER_EQUITY_HPP_
