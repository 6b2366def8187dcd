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

#include "hhminer/game.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hhminer/error.hpp"

namespace hhminer {
namespace {

[[noreturn]] void inconsistent(std::int64_t stage, const std::string& why) {
  throw Error(ErrorCode::kInconsistentHand, "stage " + std::to_string(stage) + ": " + why);
}

// Assigns 1-based acting order starting at the first seat after `after_seat`.
void assign_positions(GameState& s, int after_seat) {
  const auto n = s.players.size();
  std::size_t start = 0;
  while (start < n && s.players[start].seat_index <= after_seat) ++start;
  int order = 0;
  for (std::size_t k = 0; k < n; ++k) {
    auto& p = s.players[(start + k) % n];
    p.position_index = (p.folded || p.all_in) ? 0 : ++order;
  }
}

}  // namespace

std::string_view action_kind_name(ActionKind kind) {
  switch (kind) {
    case ActionKind::kFold: return "Fold";
    case ActionKind::kCheck: return "Check";
    case ActionKind::kCall: return "Call";
    case ActionKind::kBet: return "Bet";
    case ActionKind::kRaise: return "Raise";
    case ActionKind::kAllIn: return "AllIn";
  }
  return "?";
}

std::string_view position_label_name(PositionLabel label) {
  return label == PositionLabel::kEarly ? "Early" : "Late";
}

const PlayerAtTable* GameState::find(std::string_view player_id) const {
  for (const auto& p : players) {
    if (p.player_id == player_id) return &p;
  }
  return nullptr;
}

PlayerAtTable* GameState::find(std::string_view player_id) {
  for (auto& p : players) {
    if (p.player_id == player_id) return &p;
  }
  return nullptr;
}

Chips GameState::amount_to_call(const PlayerAtTable& p) const {
  return std::min(std::max<Chips>(to_call - p.committed_this_round, 0), p.stack);
}

int GameState::active_count() const {
  return static_cast<int>(std::count_if(players.begin(), players.end(), [](const auto& p) { return !p.folded; }));
}

GameState apply_action(const GameState& state, const Action& action) {
  const PlayerAtTable* cur = state.find(action.actor);
  if (!cur) throw Error(ErrorCode::kUnknownActor, "no player '" + action.actor + "'");
  const Chips chips = action.chips_wagered;
  auto illegal = [&](IllegalReason r, const std::string& what) -> IllegalActionError {
    return IllegalActionError(r, action.actor + " " + std::string(action_kind_name(action.kind)) + ": " + what);
  };
  if (cur->folded) throw illegal(IllegalReason::kActorFolded, "actor has folded");
  if (cur->all_in) throw illegal(IllegalReason::kActorAllIn, "actor is all-in");
  if (chips < 0 || chips > cur->stack) throw illegal(IllegalReason::kExceedsStack, "wager exceeds stack");

  switch (action.kind) {
    case ActionKind::kFold:
      if (chips != 0) throw illegal(IllegalReason::kWagerOnFold, "fold with a wager");
      break;
    case ActionKind::kCheck:
      if (chips != 0 || cur->committed_this_round != state.to_call) {
        throw illegal(IllegalReason::kCheckFacingBet, "check facing a bet");
      }
      break;
    case ActionKind::kCall:
      if (chips != state.amount_to_call(*cur)) {
        throw illegal(IllegalReason::kCallAmountMismatch,
                      "call of " + std::to_string(chips) + " but " + std::to_string(state.amount_to_call(*cur)) +
                          " owed");
      }
      break;
    case ActionKind::kBet:
      if (state.to_call > cur->committed_this_round) throw illegal(IllegalReason::kBetFacingBet, "bet facing a bet");
      if (chips == 0) throw illegal(IllegalReason::kZeroWager, "empty bet");
      break;
    case ActionKind::kRaise:
      if (cur->committed_this_round + chips <= state.to_call) {
        throw illegal(IllegalReason::kRaiseNotAbove, "raise does not exceed the current bet");
      }
      break;
    case ActionKind::kAllIn:
      if (chips == 0) throw illegal(IllegalReason::kZeroWager, "empty all-in");
      if (chips != cur->stack) throw illegal(IllegalReason::kAllInNotWholeStack, "all-in for less than the stack");
      break;
  }

  GameState next = state;
  next.action_taken.reset();
  PlayerAtTable& p = *next.find(action.actor);
  p.stack -= chips;
  p.committed_this_round += chips;
  next.pot += chips;
  next.to_call = std::max(next.to_call, p.committed_this_round);
  if (action.kind == ActionKind::kFold) p.folded = true;
  if (chips > 0 && p.stack == 0) p.all_in = true;
  return next;
}

PositionLabel position_label(const GameState& state, std::string_view actor) {
  const PlayerAtTable* p = state.find(actor);
  if (!p || p->position_index == 0) {
    throw Error(ErrorCode::kUnknownActor, "'" + std::string(actor) + "' does not act in this round");
  }
  int n = 0;
  for (const auto& q : state.players) n += q.position_index > 0 ? 1 : 0;
  return p->position_index <= (n + 1) / 2 ? PositionLabel::kEarly : PositionLabel::kLate;
}

Game replay(const ParsedHand& hand) {
  const auto stage = hand.stage_id;
  Game game;
  game.stage_id = stage;

  GameState s;
  std::vector<SeatEntry> seats = hand.seats;
  std::sort(seats.begin(), seats.end(), [](const auto& a, const auto& b) { return a.seat_index < b.seat_index; });
  for (const auto& seat : seats) {
    PlayerAtTable p;
    p.player_id = seat.player_id;
    p.seat_index = seat.seat_index;
    p.starting_stack = p.stack = seat.starting_stack;
    s.players.push_back(std::move(p));
  }

  std::map<std::string, std::array<Card, 2>, std::less<>> holes;
  for (const auto& r : hand.showdown) {
    if (r.hole_cards && r.hole_cards->size() == 2) holes[r.player_id] = {(*r.hole_cards)[0], (*r.hole_cards)[1]};
  }

  int preflop_after_seat = hand.dealer_seat;
  for (const auto& ev : hand.events) {
    if (ev.kind == EventKind::kPostBigBlind && ev.actor) {
      if (const auto* seat = hand.find_seat(*ev.actor)) preflop_after_seat = seat->seat_index;
    }
  }

  bool positions_set = false;
  std::map<std::string, Chips, std::less<>> awards;

  for (const auto& ev : hand.events) {
    PlayerAtTable* actor = ev.actor ? s.find(*ev.actor) : nullptr;
    if (ev.actor && !actor) inconsistent(stage, "event by unseated player " + *ev.actor);
    switch (ev.kind) {
      case EventKind::kPostSmallBlind:
      case EventKind::kPostBigBlind: {
        if (ev.amount > actor->stack) inconsistent(stage, "blind exceeds stack");
        actor->stack -= ev.amount;
        actor->committed_this_round += ev.amount;
        if (actor->stack == 0) actor->all_in = true;
        s.pot += ev.amount;
        s.to_call = std::max(s.to_call, actor->committed_this_round);
        break;
      }
      case EventKind::kStreetMarker: {
        if (ev.street == Street::kPreFlop) {
          assign_positions(s, preflop_after_seat);
          positions_set = true;
          break;
        }
        s.round = ev.street;
        s.to_call = 0;
        for (auto& p : s.players) p.committed_this_round = 0;
        s.board.insert(s.board.end(), ev.cards.begin(), ev.cards.end());
        assign_positions(s, hand.dealer_seat);
        positions_set = true;
        break;
      }
      case EventKind::kFold:
      case EventKind::kCheck:
      case EventKind::kCall:
      case EventKind::kBet:
      case EventKind::kRaiseTo:
      case EventKind::kAllIn: {
        if (!positions_set) {
          assign_positions(s, preflop_after_seat);
          positions_set = true;
        }
        Action a;
        a.actor = *ev.actor;
        a.chips_wagered = ev.amount;
        switch (ev.kind) {
          case EventKind::kFold: a.kind = ActionKind::kFold; break;
          case EventKind::kCheck: a.kind = ActionKind::kCheck; break;
          case EventKind::kCall: a.kind = ActionKind::kCall; break;
          case EventKind::kBet: a.kind = ActionKind::kBet; break;
          case EventKind::kRaiseTo: a.kind = ActionKind::kRaise; break;
          default: a.kind = ActionKind::kAllIn; break;
        }
        if (ev.raise_to && actor->committed_this_round + ev.amount != *ev.raise_to) {
          inconsistent(stage, *ev.actor + " raise total " + format_money(*ev.raise_to) +
                                  " does not match commitment");
        }
        GameState next;
        try {
          next = apply_action(s, a);
        } catch (const Error& e) {
          inconsistent(stage, e.what());
        }
        DecisionRecord rec;
        rec.action = a;
        rec.n_opponents = s.active_count() - 1;
        if (auto it = holes.find(a.actor); it != holes.end()) rec.hole_cards = it->second;
        s.action_taken = a;
        rec.state = s;
        game.states.push_back(s);
        game.decisions.push_back(std::move(rec));
        s = std::move(next);
        break;
      }
      case EventKind::kReturnUncalled: {
        if (ev.amount > actor->committed_this_round) inconsistent(stage, "uncalled return exceeds commitment");
        actor->stack += ev.amount;
        actor->committed_this_round -= ev.amount;
        s.pot -= ev.amount;
        s.to_call = 0;
        for (const auto& p : s.players) s.to_call = std::max(s.to_call, p.committed_this_round);
        break;
      }
      case EventKind::kCollect:
        awards[*ev.actor] += ev.amount;
        break;
      case EventKind::kShow:
      case EventKind::kDoesNotShow:
      case EventKind::kShowdownMarker:
        break;
    }
  }
  s.action_taken.reset();
  game.states.push_back(s);
  game.final_pot = s.pot;

  if (s.pot != hand.pot_total) {
    inconsistent(stage, "replayed pot " + format_money(s.pot) + " differs from summary " +
                            format_money(hand.pot_total));
  }
  Chips awarded = 0;
  for (const auto& [_, amt] : awards) awarded += amt;
  if (awarded != s.pot) {
    inconsistent(stage, "awards " + format_money(awarded) + " differ from pot " + format_money(s.pot));
  }
  Chips start_total = 0;
  Chips end_total = 0;
  for (const auto& p : s.players) {
    Chips final = p.stack;
    if (auto it = awards.find(p.player_id); it != awards.end()) final += it->second;
    game.final_stacks.push_back(final);
    game.net_deltas.push_back(final - p.starting_stack);
    start_total += p.starting_stack;
    end_total += final;
  }
  if (start_total != end_total) inconsistent(stage, "chips not conserved");
  return game;
}

std::string Game::trace() const {
  std::ostringstream out;
  out << "stage " << stage_id << '\n';
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& st = states[i];
    out << '[' << i << "] " << street_name(st.round) << " pot=" << format_money(st.pot)
        << " to_call=" << format_money(st.to_call);
    if (!st.board.empty()) out << " board=[" << to_string(st.board) << ']';
    out << '\n';
    for (const auto& p : st.players) {
      out << "    " << p.player_id << " stack=" << format_money(p.stack)
          << " in=" << format_money(p.committed_this_round) << (p.folded ? " folded" : "")
          << (p.all_in ? " all-in" : "") << " pos=" << p.position_index << '\n';
    }
    if (st.action_taken) {
      out << "    -> " << st.action_taken->actor << ' ' << action_kind_name(st.action_taken->kind) << ' '
          << format_money(st.action_taken->chips_wagered) << '\n';
    }
  }
  out << "final pot " << format_money(final_pot) << '\n';
  return out.str();
}

}  // namespace hhminer
