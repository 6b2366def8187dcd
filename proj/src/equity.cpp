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

#include "hhminer/equity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <vector>

#include "hhminer/error.hpp"

namespace hhminer {
namespace {

constexpr std::uint32_t kRankBits = 0x1FFF;

std::uint32_t pack(HandCategory c, std::initializer_list<int> ranks) {
  std::uint32_t v = static_cast<std::uint32_t>(c) << 20;
  int shift = 16;
  for (int r : ranks) {
    v |= static_cast<std::uint32_t>(r) << shift;
    shift -= 4;
  }
  return v;
}

int high_bit(std::uint32_t m) { return 31 - std::countl_zero(m); }

// Highest rank (2..14) of a five-card straight in the rank mask, or 0.
struct StraightTable {
  std::array<std::uint8_t, 8192> high{};
  StraightTable() {
    for (std::uint32_t m = 0; m < 8192; ++m) {
      for (int top = 12; top >= 4; --top) {
        std::uint32_t run = 0x1Fu << (top - 4);
        if ((m & run) == run) {
          high[m] = static_cast<std::uint8_t>(top + 2);
          break;
        }
      }
      if (!high[m] && (m & 0x100F) == 0x100F) high[m] = 5;
    }
  }
};

const StraightTable& straights() {
  static const StraightTable table;
  return table;
}

// Up to `n` highest ranks of the mask, as 2..14 values.
void top_ranks(std::uint32_t m, int n, int* out) {
  for (int i = 0; i < n; ++i) {
    if (!m) {
      out[i] = 0;
      continue;
    }
    int b = high_bit(m);
    out[i] = b + 2;
    m &= ~(1u << b);
  }
}

void check_hole(std::span<const Card> hole) {
  if (hole.size() != 2) throw Error(ErrorCode::kWrongCardCount, "hole must have two cards");
}

enum Outcome { kAhead = 0, kTied = 1, kBehind = 2 };

Outcome compare(std::uint32_t ours, std::uint32_t theirs) {
  return ours > theirs ? kAhead : (ours == theirs ? kTied : kBehind);
}

}  // namespace

std::string_view hand_category_name(HandCategory c) {
  switch (c) {
    case HandCategory::kHighCard: return "HighCard";
    case HandCategory::kPair: return "Pair";
    case HandCategory::kTwoPair: return "TwoPair";
    case HandCategory::kTrips: return "Trips";
    case HandCategory::kStraight: return "Straight";
    case HandCategory::kFlush: return "Flush";
    case HandCategory::kFullHouse: return "FullHouse";
    case HandCategory::kQuads: return "Quads";
    case HandCategory::kStraightFlush: return "StraightFlush";
  }
  return "?";
}

std::uint32_t evaluate_mask(std::uint64_t mask) {
  const auto& st = straights().high;
  const std::uint32_t s0 = mask & kRankBits;
  const std::uint32_t s1 = (mask >> 16) & kRankBits;
  const std::uint32_t s2 = (mask >> 32) & kRankBits;
  const std::uint32_t s3 = (mask >> 48) & kRankBits;

  for (std::uint32_t s : {s0, s1, s2, s3}) {
    if (std::popcount(s) >= 5) {
      // Five suited cards rule out quads and full houses with seven cards.
      if (int sf = st[s]) return pack(HandCategory::kStraightFlush, {sf});
      int r[5];
      top_ranks(s, 5, r);
      return pack(HandCategory::kFlush, {r[0], r[1], r[2], r[3], r[4]});
    }
  }

  const std::uint32_t all = s0 | s1 | s2 | s3;
  const std::uint32_t quads = s0 & s1 & s2 & s3;
  if (quads) {
    int q = high_bit(quads);
    int k = high_bit(all & ~(1u << q));
    return pack(HandCategory::kQuads, {q + 2, k + 2});
  }

  // Bit-sliced per-rank counts: count = b0 + 2*b1 (counts of 4 handled above).
  std::uint32_t b0 = 0, b1 = 0;
  for (std::uint32_t s : {s0, s1, s2, s3}) {
    std::uint32_t carry = b0 & s;
    b0 ^= s;
    b1 |= carry;
  }
  const std::uint32_t trips = b0 & b1;
  const std::uint32_t pairs = b1 & ~b0;

  if (trips) {
    int t = high_bit(trips);
    std::uint32_t rest = (trips & ~(1u << t)) | pairs;
    if (rest) return pack(HandCategory::kFullHouse, {t + 2, high_bit(rest) + 2});
  }
  if (int sh = st[all]) return pack(HandCategory::kStraight, {sh});
  if (trips) {
    int t = high_bit(trips);
    int k[2];
    top_ranks(all & ~(1u << t), 2, k);
    return pack(HandCategory::kTrips, {t + 2, k[0], k[1]});
  }
  if (std::popcount(pairs) >= 2) {
    int p1 = high_bit(pairs);
    int p2 = high_bit(pairs & ~(1u << p1));
    int k = high_bit(all & ~(1u << p1) & ~(1u << p2));
    return pack(HandCategory::kTwoPair, {p1 + 2, p2 + 2, k + 2});
  }
  if (pairs) {
    int p = high_bit(pairs);
    int k[3];
    top_ranks(all & ~(1u << p), 3, k);
    return pack(HandCategory::kPair, {p + 2, k[0], k[1], k[2]});
  }
  int r[5];
  top_ranks(all, 5, r);
  return pack(HandCategory::kHighCard, {r[0], r[1], r[2], r[3], r[4]});
}

HandRank decode_hand_value(std::uint32_t value) {
  HandRank hr;
  hr.category = static_cast<HandCategory>(value >> 20);
  for (int i = 0; i < 5; ++i) hr.tiebreak[i] = static_cast<std::uint8_t>((value >> (16 - 4 * i)) & 0xF);
  return hr;
}

HandRank best5_rank(std::span<const Card> cards) {
  if (cards.size() < 5 || cards.size() > 7) {
    throw Error(ErrorCode::kWrongCardCount, "need 5 to 7 cards, got " + std::to_string(cards.size()));
  }
  return decode_hand_value(evaluate_mask(card_mask(cards)));
}

double hand_strength(std::span<const Card> hole, std::span<const Card> board, int n_opponents) {
  check_hole(hole);
  if (board.empty()) throw Error(ErrorCode::kPreFlopBoard, "hand strength needs a board; use preflop_win_prob");
  if (board.size() < 3 || board.size() > 5) throw Error(ErrorCode::kWrongCardCount, "board must have 3 to 5 cards");
  if (n_opponents < 1) throw Error(ErrorCode::kInvalidArgument, "n_opponents must be >= 1");
  require_distinct({hole, board});
  const std::uint64_t board_mask = card_mask(board);
  const std::uint64_t used = board_mask | card_mask(hole);
  const std::uint32_t ours = evaluate_mask(used);
  std::int64_t counts[3] = {0, 0, 0};
  for (int a = 0; a < kDeckSize; ++a) {
    const std::uint64_t ma = Card::from_index(a).mask();
    if (used & ma) continue;
    for (int b = a + 1; b < kDeckSize; ++b) {
      const std::uint64_t mb = Card::from_index(b).mask();
      if (used & mb) continue;
      ++counts[compare(ours, evaluate_mask(board_mask | ma | mb))];
    }
  }
  const double total = static_cast<double>(counts[0] + counts[1] + counts[2]);
  const double hs1 = (static_cast<double>(counts[kAhead]) + static_cast<double>(counts[kTied]) / 2.0) / total;
  return n_opponents == 1 ? hs1 : std::pow(hs1, n_opponents);
}

HandPotential hand_potential(std::span<const Card> hole, std::span<const Card> board, std::size_t lookahead_cap,
                             std::uint64_t seed) {
  check_hole(hole);
  require_distinct({hole, board});
  if (board.size() == 5) return {};
  if (board.size() != 3 && board.size() != 4) {
    throw Error(ErrorCode::kWrongBoardSize, "potential needs a flop or turn board");
  }
  const std::uint64_t board_mask = card_mask(board);
  const std::uint64_t used = board_mask | card_mask(hole);
  std::vector<std::uint64_t> unseen;
  for (int c = 0; c < kDeckSize; ++c) {
    if (!(used & Card::from_index(c).mask())) unseen.push_back(Card::from_index(c).mask());
  }

  std::vector<std::uint64_t> runouts;
  if (board.size() == 3) {
    for (std::size_t i = 0; i < unseen.size(); ++i) {
      for (std::size_t j = i + 1; j < unseen.size(); ++j) runouts.push_back(unseen[i] | unseen[j]);
    }
  } else {
    runouts = unseen;
  }
  if (lookahead_cap < runouts.size()) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < lookahead_cap; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, runouts.size() - 1);
      std::swap(runouts[i], runouts[pick(rng)]);
    }
    runouts.resize(lookahead_cap);
  }

  const std::uint64_t hole_board = used;
  const std::uint32_t ours_now = evaluate_mask(hole_board);
  std::vector<std::uint32_t> ours_final(runouts.size());
  for (std::size_t r = 0; r < runouts.size(); ++r) ours_final[r] = evaluate_mask(hole_board | runouts[r]);

  std::int64_t hp[3][3] = {};
  std::int64_t hp_total[3] = {};
  for (std::size_t a = 0; a < unseen.size(); ++a) {
    for (std::size_t b = a + 1; b < unseen.size(); ++b) {
      const std::uint64_t opp = unseen[a] | unseen[b];
      const int now = compare(ours_now, evaluate_mask(board_mask | opp));
      for (std::size_t r = 0; r < runouts.size(); ++r) {
        if (runouts[r] & opp) continue;
        ++hp_total[now];
        ++hp[now][compare(ours_final[r], evaluate_mask(board_mask | runouts[r] | opp))];
      }
    }
  }
  // Doubled counts keep the half-weights exact.
  HandPotential out;
  const std::int64_t ppot_den = 2 * hp_total[kBehind] + hp_total[kTied];
  const std::int64_t npot_den = 2 * hp_total[kAhead] + hp_total[kTied];
  if (ppot_den > 0) {
    out.ppot = static_cast<double>(2 * hp[kBehind][kAhead] + hp[kBehind][kTied] + hp[kTied][kAhead]) /
               static_cast<double>(ppot_den);
  }
  if (npot_den > 0) {
    out.npot = static_cast<double>(2 * hp[kAhead][kBehind] + hp[kTied][kBehind] + hp[kAhead][kTied]) /
               static_cast<double>(npot_den);
  }
  return out;
}

double win_probability(double hs, double ppot, double npot) {
  for (double v : {hs, ppot, npot}) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::kOutOfRangeInput, "probability outside [0, 1]");
  }
  return std::clamp(hs * (1 - npot) + (1 - hs) * ppot, 0.0, 1.0);
}

double preflop_win_prob(std::span<const Card> hole, int n_opponents, int samples, std::uint64_t seed) {
  check_hole(hole);
  require_distinct({hole});
  if (n_opponents < 1 || 2 * n_opponents + 5 > kDeckSize - 2) {
    throw Error(ErrorCode::kInvalidArgument, "n_opponents out of range");
  }
  if (samples < 1) throw Error(ErrorCode::kInvalidArgument, "samples must be >= 1");

  // Relabel suits so that the hole's suits come first; the dealing order is
  // then the same for every suit-isomorphic holding.
  std::array<int, 4> canonical_to_real{};
  {
    std::array<bool, 4> taken{};
    int next = 0;
    for (Card c : hole) {
      int s = static_cast<int>(c.suit());
      if (!taken[s]) {
        taken[s] = true;
        canonical_to_real[next++] = s;
      }
    }
    for (int s = 0; s < 4; ++s) {
      if (!taken[s]) canonical_to_real[next++] = s;
    }
  }
  const std::uint64_t hole_mask = card_mask(hole);
  std::vector<std::uint64_t> deck;
  deck.reserve(50);
  for (int rank = 2; rank <= 14; ++rank) {
    for (int cs = 0; cs < 4; ++cs) {
      Card c(rank, static_cast<Suit>(canonical_to_real[cs]));
      if (!(hole_mask & c.mask())) deck.push_back(c.mask());
    }
  }

  std::mt19937_64 rng(seed);
  const std::size_t need = static_cast<std::size_t>(2 * n_opponents + 5);
  double total = 0.0;
  for (int s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < need; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, deck.size() - 1);
      std::swap(deck[i], deck[pick(rng)]);
    }
    const std::uint64_t board = deck[0] | deck[1] | deck[2] | deck[3] | deck[4];
    const std::uint32_t ours = evaluate_mask(board | hole_mask);
    int tied = 0;
    bool lost = false;
    for (int o = 0; o < n_opponents && !lost; ++o) {
      const std::uint32_t theirs = evaluate_mask(board | deck[5 + 2 * o] | deck[6 + 2 * o]);
      if (theirs > ours) lost = true;
      else if (theirs == ours) ++tied;
    }
    if (!lost) total += 1.0 / (1 + tied);
  }
  return total / samples;
}

EquityResult postflop_equity(std::span<const Card> hole, std::span<const Card> board, int n_opponents,
                             const EquityConfig& config, std::uint64_t seed) {
  EquityResult r;
  r.hs = hand_strength(hole, board, n_opponents);
  auto pot = hand_potential(hole, board, config.lookahead_cap, seed);
  r.ppot = pot.ppot;
  r.npot = pot.npot;
  r.win_prob = win_probability(r.hs, r.ppot, r.npot);
  return r;
}

}  // namespace hhminer
