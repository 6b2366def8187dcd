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

// Replays a parsed hand into the sequence of game states seen by each
// decision, with exact integer chip accounting.

#ifndef HHMINER_GAME_HPP_
#define HHMINER_GAME_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hhminer/cards.hpp"
#include "hhminer/handlog.hpp"

namespace hhminer {

enum class ActionKind : std::uint8_t { kFold, kCheck, kCall, kBet, kRaise, kAllIn };
std::string_view action_kind_name(ActionKind kind);

struct Action {
  std::string actor;
  ActionKind kind = ActionKind::kCheck;
  Chips chips_wagered = 0;

  bool operator==(const Action&) const = default;
};

struct PlayerAtTable {
  std::string player_id;
  int seat_index = 0;
  Chips starting_stack = 0;
  Chips stack = 0;
  Chips committed_this_round = 0;
  bool folded = false;
  bool all_in = false;
  // 1-based order of first action in the current round; 0 when the player
  // does not act this round (folded or all-in at the start of it).
  int position_index = 0;

  bool operator==(const PlayerAtTable&) const = default;
};

struct GameState {
  Street round = Street::kPreFlop;
  Chips pot = 0;
  // Highest total commitment in the current round; the level a player must
  // match to stay in.
  Chips to_call = 0;
  std::vector<PlayerAtTable> players;  // seat order
  std::vector<Card> board;
  std::optional<Action> action_taken;

  const PlayerAtTable* find(std::string_view player_id) const;
  PlayerAtTable* find(std::string_view player_id);
  // Chips the player must add to match to_call (capped by the stack).
  Chips amount_to_call(const PlayerAtTable& p) const;
  int active_count() const;  // not folded

  bool operator==(const GameState&) const = default;
};

struct DecisionRecord {
  GameState state;  // before the action, with action_taken set
  Action action;
  std::optional<std::array<Card, 2>> hole_cards;
  int n_opponents = 0;  // other players still in the hand
};

struct Game {
  std::int64_t stage_id = 0;
  std::vector<GameState> states;  // states[i] precedes decisions[i]; last is terminal
  std::vector<DecisionRecord> decisions;
  Chips final_pot = 0;  // after uncalled returns, before awards
  std::vector<Chips> final_stacks;  // seat order, after awards
  std::vector<Chips> net_deltas;  // final - starting, seat order

  std::string trace() const;  // human-readable state dump
};

// Pure transition: validates `action` against `state` and returns the
// successor. Throws IllegalActionError or UnknownActor.
GameState apply_action(const GameState& state, const Action& action);

enum class PositionLabel : std::uint8_t { kEarly, kLate };
std::string_view position_label_name(PositionLabel label);

// Early iff the actor's order in the round is <= ceil(n / 2), where n is the
// number of players who act in the round. Throws UnknownActor.
PositionLabel position_label(const GameState& state, std::string_view actor);

// Throws InconsistentHand when chips do not balance or an action is illegal.
Game replay(const ParsedHand& hand);

}  // namespace hhminer

#endif  // HHMINER_GAME_HPP_
