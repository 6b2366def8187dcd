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

#include <doctest.h>

#include <numeric>
#include <sstream>

#include "hhminer/error.hpp"
#include "hhminer/game.hpp"
#include "hhminer/synth.hpp"
#include "test_util.hpp"

using namespace hhminer;

namespace {

ParsedHand sample() { return parse_hand(testutil::read_file(testutil::data_path("sample_hand.txt"))); }

GameState three_way() {
  GameState s;
  s.round = Street::kFlop;
  s.pot = 600;
  for (int i = 0; i < 3; ++i) {
    PlayerAtTable p;
    p.player_id = "p" + std::to_string(i);
    p.seat_index = i + 1;
    p.starting_stack = p.stack = 1000;
    p.position_index = i + 1;
    s.players.push_back(p);
  }
  return s;
}

IllegalReason reason_of(const GameState& s, const Action& a) {
  try {
    apply_action(s, a);
  } catch (const IllegalActionError& e) {
    return e.reason();
  }
  FAIL("expected IllegalActionError");
  return IllegalReason::kZeroWager;
}

}  // namespace

TEST_CASE("sample hand replays to a $12 pot") {
  const Game g = replay(sample());
  CHECK(g.final_pot == 1200);
  REQUIRE(g.decisions.size() == 2);
  CHECK(g.decisions[0].action.kind == ActionKind::kRaise);
  CHECK(g.decisions[0].action.chips_wagered == 1500);
  CHECK(g.decisions[1].action.kind == ActionKind::kFold);
  // Seat order: 4 then 6.
  CHECK(g.final_stacks == std::vector<Chips>{221425 - 600, 117900 + 600});
  CHECK(std::accumulate(g.net_deltas.begin(), g.net_deltas.end(), Chips{0}) == 0);
  CHECK_FALSE(g.trace().empty());
}

TEST_CASE("state before each decision") {
  const Game g = replay(sample());
  const GameState& before_raise = g.decisions[0].state;
  CHECK(before_raise.pot == 900);
  CHECK(before_raise.to_call == 600);
  CHECK(before_raise.amount_to_call(*before_raise.find("nZE2Jjzd6N7Iw/f/mLLEXA")) == 300);
  const GameState& before_fold = g.decisions[1].state;
  CHECK(before_fold.pot == 2400);
  CHECK(before_fold.to_call == 1800);
  CHECK(g.decisions[0].n_opponents == 1);
}

TEST_CASE("pot inconsistent with the summary") {
  ParsedHand h = sample();
  h.pot_total = 1300;
  try {
    replay(h);
    FAIL("expected InconsistentHand");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInconsistentHand);
  }
}

TEST_CASE("illegal actions are named") {
  GameState s = three_way();
  CHECK(reason_of(s, {"p0", ActionKind::kCall, 10}) == IllegalReason::kCallAmountMismatch);
  CHECK(reason_of(s, {"p0", ActionKind::kBet, 0}) == IllegalReason::kZeroWager);
  CHECK(reason_of(s, {"p0", ActionKind::kBet, 1001}) == IllegalReason::kExceedsStack);
  CHECK(reason_of(s, {"p0", ActionKind::kAllIn, 500}) == IllegalReason::kAllInNotWholeStack);
  CHECK(reason_of(s, {"p0", ActionKind::kFold, 5}) == IllegalReason::kWagerOnFold);
  s = apply_action(s, {"p0", ActionKind::kBet, 200});
  CHECK(reason_of(s, {"p1", ActionKind::kCheck, 0}) == IllegalReason::kCheckFacingBet);
  CHECK(reason_of(s, {"p1", ActionKind::kBet, 300}) == IllegalReason::kBetFacingBet);
  CHECK(reason_of(s, {"p1", ActionKind::kRaise, 200}) == IllegalReason::kRaiseNotAbove);
  s = apply_action(s, {"p1", ActionKind::kFold, 0});
  CHECK(reason_of(s, {"p1", ActionKind::kCall, 200}) == IllegalReason::kActorFolded);
  s = apply_action(s, {"p2", ActionKind::kAllIn, 1000});
  CHECK(reason_of(s, {"p2", ActionKind::kCheck, 0}) == IllegalReason::kActorAllIn);
  CHECK_THROWS_AS(apply_action(s, {"nobody", ActionKind::kCheck, 0}), Error);
}

TEST_CASE("transitions move chips exactly") {
  GameState s = three_way();
  s = apply_action(s, {"p0", ActionKind::kBet, 200});
  s = apply_action(s, {"p1", ActionKind::kRaise, 500});
  CHECK(s.to_call == 500);
  CHECK(s.amount_to_call(*s.find("p0")) == 300);
  s = apply_action(s, {"p2", ActionKind::kCall, 500});
  s = apply_action(s, {"p0", ActionKind::kCall, 300});
  CHECK(s.pot == 600 + 1500);
  for (const auto& p : s.players) CHECK(p.stack + p.committed_this_round == 1000);
}

TEST_CASE("short call is capped by the stack") {
  GameState s = three_way();
  s.players[2].stack = 100;
  s = apply_action(s, {"p0", ActionKind::kBet, 400});
  CHECK(s.amount_to_call(*s.find("p2")) == 100);
  s = apply_action(s, {"p2", ActionKind::kCall, 100});
  CHECK(s.find("p2")->all_in);
}

TEST_CASE("positions split the acting order at the middle") {
  GameState s = three_way();
  CHECK(position_label(s, "p0") == PositionLabel::kEarly);
  CHECK(position_label(s, "p1") == PositionLabel::kEarly);
  CHECK(position_label(s, "p2") == PositionLabel::kLate);
  s.players.pop_back();
  CHECK(position_label(s, "p0") == PositionLabel::kEarly);
  CHECK(position_label(s, "p1") == PositionLabel::kLate);
  CHECK_THROWS_AS(position_label(s, "p9"), Error);
}

TEST_CASE("heads-up sample: the dealer acts first pre-flop") {
  const Game g = replay(sample());
  CHECK(position_label(g.decisions[0].state, "nZE2Jjzd6N7Iw/f/mLLEXA") == PositionLabel::kEarly);
  CHECK(position_label(g.decisions[1].state, "PtgusfQqsttogld64pQOGw") == PositionLabel::kLate);
}

TEST_CASE("generated hands conserve chips") {
  synth::Config cfg;
  cfg.players = 20;
  cfg.hands = 150;
  cfg.seed = 8;
  const auto corpus = synth::generate(cfg);
  for (const auto& hand : corpus.hands) {
    const Game g = replay(hand);
    CHECK(std::accumulate(g.net_deltas.begin(), g.net_deltas.end(), Chips{0}) == 0);
    Chips start = 0;
    for (const auto& seat : hand.seats) start += seat.starting_stack;
    CHECK(std::accumulate(g.final_stacks.begin(), g.final_stacks.end(), Chips{0}) == start);
    CHECK(g.final_pot == hand.pot_total);
    for (std::size_t i = 0; i < g.decisions.size(); ++i) {
      const auto& st = g.decisions[i].state;
      Chips held = st.pot;
      for (const auto& p : st.players) {
        held += p.stack;
        CHECK(p.stack >= 0);
      }
      CHECK(held == start);
    }
  }
}
