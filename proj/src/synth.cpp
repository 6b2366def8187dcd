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

#include "hhminer/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>

#include "hhminer/equity.hpp"
#include "hhminer/error.hpp"
#include "hhminer/game.hpp"

namespace hhminer::synth {
namespace {

class HandBuilder {
 public:
  HandBuilder(const Config& cfg, std::mt19937_64& rng) : cfg_(cfg), rng_(rng) {}

  ParsedHand play(std::int64_t stage_id, const std::string& table, std::vector<const Player*> seated,
                  std::size_t dealer) {
    hand_ = ParsedHand{};
    hand_.stage_id = stage_id;
    hand_.variant = "Holdem";
    hand_.stakes = cfg_.big_blind;
    hand_.table_name = table;
    const std::size_t n = seated.size();
    state_ = GameState{};
    street_ = Street::kPreFlop;
    archetype_.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const int seat = static_cast<int>(i) + 1;
      hand_.seats.push_back({seat, seated[i]->id, cfg_.stack});
      PlayerAtTable p;
      p.player_id = seated[i]->id;
      p.seat_index = seat;
      p.starting_stack = p.stack = cfg_.stack;
      state_.players.push_back(p);
      archetype_.push_back(&cfg_.archetypes.at(seated[i]->archetype));
    }
    hand_.dealer_seat = static_cast<int>(dealer) + 1;

    std::vector<int> deck(kDeckSize);
    std::iota(deck.begin(), deck.end(), 0);
    std::shuffle(deck.begin(), deck.end(), rng_);
    holes_.assign(n, {});
    preflop_.assign(n, std::nullopt);
    for (std::size_t i = 0; i < n; ++i) {
      holes_[i] = {Card::from_index(deck[2 * i]), Card::from_index(deck[2 * i + 1])};
    }
    std::vector<Card> board;
    for (std::size_t c = 0; c < 5; ++c) board.push_back(Card::from_index(deck[2 * n + c]));

    const std::size_t sb = n == 2 ? dealer : (dealer + 1) % n;
    const std::size_t bb = (sb + 1) % n;
    post(sb, EventKind::kPostSmallBlind, cfg_.small_blind);
    post(bb, EventKind::kPostBigBlind, cfg_.big_blind);
    marker(Street::kPreFlop, {});

    betting_round((bb + 1) % n);
    const Street streets[] = {Street::kFlop, Street::kTurn, Street::kRiver};
    std::size_t dealt = 0;
    for (Street st : streets) {
      if (state_.active_count() < 2) break;
      return_uncalled();
      const std::size_t k = st == Street::kFlop ? 3 : 1;
      std::vector<Card> cards(board.begin() + static_cast<std::ptrdiff_t>(dealt),
                              board.begin() + static_cast<std::ptrdiff_t>(dealt + k));
      dealt += k;
      state_.round = st;
      state_.to_call = 0;
      for (auto& p : state_.players) p.committed_this_round = 0;
      state_.board.insert(state_.board.end(), cards.begin(), cards.end());
      marker(st, cards);
      betting_round((dealer + 1) % n);
    }
    return_uncalled();
    finish(board);
    return hand_;
  }

 private:
  LogEvent event(std::size_t i, EventKind kind, Chips amount) {
    LogEvent ev;
    ev.actor = state_.players[i].player_id;
    ev.kind = kind;
    ev.amount = amount;
    ev.street = street_;
    return ev;
  }

  void post(std::size_t i, EventKind kind, Chips amount) {
    auto& p = state_.players[i];
    amount = std::min(amount, p.stack);
    p.stack -= amount;
    p.committed_this_round += amount;
    if (p.stack == 0) p.all_in = true;
    state_.pot += amount;
    state_.to_call = std::max(state_.to_call, p.committed_this_round);
    hand_.events.push_back(event(i, kind, amount));
  }

  void marker(Street st, std::vector<Card> cards) {
    street_ = st;
    LogEvent ev;
    ev.kind = EventKind::kStreetMarker;
    ev.street = st;
    ev.cards = std::move(cards);
    hand_.events.push_back(std::move(ev));
  }

  bool can_act(std::size_t i) const { return !state_.players[i].folded && !state_.players[i].all_in; }

  void betting_round(std::size_t first) {
    const std::size_t n = state_.players.size();
    std::vector<bool> pending(n);
    for (std::size_t i = 0; i < n; ++i) pending[i] = can_act(i);
    if (std::none_of(pending.begin(), pending.end(), [](bool b) { return b; })) return;
    int raises = 0;
    std::size_t i = first;
    std::size_t idle = 0;
    while (idle < n) {
      if (!pending[i] || !can_act(i) || state_.active_count() < 2) {
        ++idle;
        i = (i + 1) % n;
        continue;
      }
      idle = 0;
      pending[i] = false;
      // A lone remaining player with nothing to call has no decision.
      const auto others = std::count_if(state_.players.begin(), state_.players.end(),
                                        [&](const auto& p) { return &p != &state_.players[i] && !p.folded && !p.all_in; });
      const Chips owed = state_.amount_to_call(state_.players[i]);
      if (others == 0 && owed == 0) {
        i = (i + 1) % n;
        continue;
      }
      const bool raised = act(i, raises < cfg_.max_raises_per_round && others > 0);
      if (raised) {
        ++raises;
        for (std::size_t j = 0; j < n; ++j) pending[j] = j != i && can_act(j);
      }
      i = (i + 1) % n;
    }
  }

  // Returns true when the action raised the bet.
  bool act(std::size_t i, bool may_raise) {
    const Archetype& a = *archetype_[i];
    auto& p = state_.players[i];
    const Chips owed = state_.amount_to_call(p);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Action action{p.player_id, ActionKind::kCheck, 0};
    LogEvent ev = event(i, EventKind::kCheck, 0);
    bool raised = false;
    const double strength = hand_strength_of(i);
    if (owed > 0 && (strength < a.continue_strength || u(rng_) < a.fold_prob)) {
      action.kind = ActionKind::kFold;
      ev.kind = EventKind::kFold;
    } else if (may_raise && owed < p.stack && strength >= a.raise_strength && u(rng_) < a.raise_prob) {
      std::uniform_real_distribution<double> size(a.min_size, a.max_size);
      Chips extra = static_cast<Chips>(size(rng_) * static_cast<double>(p.stack));
      extra = std::max(extra, cfg_.big_blind);
      Chips chips = owed + extra;
      const Chips total = p.committed_this_round + chips;
      if (chips >= p.stack) {
        chips = p.stack;
        action.kind = ActionKind::kAllIn;
        ev.kind = EventKind::kAllIn;
        if (p.committed_this_round + chips > state_.to_call) ev.raise_to = p.committed_this_round + chips;
      } else if (state_.to_call > p.committed_this_round) {
        action.kind = ActionKind::kRaise;
        ev.kind = EventKind::kRaiseTo;
        ev.raise_to = total;
      } else {
        action.kind = ActionKind::kBet;
        ev.kind = EventKind::kBet;
      }
      action.chips_wagered = chips;
      ev.amount = chips;
      raised = p.committed_this_round + chips > state_.to_call;
    } else if (owed > 0) {
      action.kind = ActionKind::kCall;
      action.chips_wagered = owed;
      ev.kind = EventKind::kCall;
      ev.amount = owed;
    }
    state_ = apply_action(state_, action);
    hand_.events.push_back(std::move(ev));
    return raised;
  }

  // Heads-up equity of player i's holding on the current board.
  double hand_strength_of(std::size_t i) {
    if (state_.board.empty()) {
      if (!preflop_[i]) preflop_[i] = preflop_win_prob(holes_[i], 1, 200, rng_());
      return *preflop_[i];
    }
    return hand_strength(holes_[i], state_.board, 1);
  }

  void return_uncalled() {
    std::size_t top = 0;
    Chips first = -1, second = 0;
    for (std::size_t i = 0; i < state_.players.size(); ++i) {
      const Chips c = state_.players[i].committed_this_round;
      if (c > first) {
        second = std::max(second, first);
        first = c;
        top = i;
      } else {
        second = std::max(second, c);
      }
    }
    if (first > second) {
      auto& p = state_.players[top];
      const Chips back = first - second;
      p.stack += back;
      p.committed_this_round -= back;
      state_.pot -= back;
      state_.to_call = second;
      hand_.events.push_back(event(top, EventKind::kReturnUncalled, back));
    }
  }

  void finish(const std::vector<Card>& board) {
    const std::size_t n = state_.players.size();
    LogEvent sd;
    sd.kind = EventKind::kShowdownMarker;
    sd.street = street_;
    hand_.events.push_back(sd);
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < n; ++i) {
      if (!state_.players[i].folded) live.push_back(i);
    }
    std::vector<std::size_t> winners;
    if (live.size() == 1) {
      hand_.events.push_back(event(live[0], EventKind::kDoesNotShow, 0));
      hand_.showdown.push_back({state_.players[live[0]].player_id, std::nullopt});
      winners = live;
    } else {
      std::uint32_t best = 0;
      for (std::size_t i : live) {
        LogEvent ev = event(i, EventKind::kShow, 0);
        ev.cards = {holes_[i][0], holes_[i][1]};
        hand_.events.push_back(ev);
        hand_.showdown.push_back({state_.players[i].player_id, ev.cards});
        std::vector<Card> seven = board;
        seven.push_back(holes_[i][0]);
        seven.push_back(holes_[i][1]);
        const std::uint32_t v = evaluate_mask(card_mask(seven));
        if (v > best) {
          best = v;
          winners.clear();
        }
        if (v == best) winners.push_back(i);
      }
    }
    const Chips share = state_.pot / static_cast<Chips>(winners.size());
    Chips rest = state_.pot - share * static_cast<Chips>(winners.size());
    for (std::size_t w : winners) {
      hand_.events.push_back(event(w, EventKind::kCollect, share + rest));
      rest = 0;
    }
    hand_.pot_total = state_.pot;
  }

  const Config& cfg_;
  std::mt19937_64& rng_;
  ParsedHand hand_;
  GameState state_;
  Street street_ = Street::kPreFlop;
  std::vector<const Archetype*> archetype_;
  std::vector<std::array<Card, 2>> holes_;
  std::vector<std::optional<double>> preflop_;
};

}  // namespace

const std::vector<Archetype>& default_archetypes() {
  static const std::vector<Archetype> kArchetypes = {
      {"tight-aggressive", 0.9, 0.02, 0.10, 0.20, 0.0, 0.6},
      {"loose-passive", 0.03, 0.02, 0.02, 0.05, 0.0, 0.0},
      {"loose-aggressive", 0.5, 0.02, 0.03, 0.06, 0.0, 0.0},
  };
  return kArchetypes;
}

Corpus generate(const Config& config) {
  if (config.archetypes.empty()) throw Error(ErrorCode::kInvalidArgument, "no archetypes");
  if (config.table_size < 2 || config.players < 2) throw Error(ErrorCode::kInvalidArgument, "need 2+ players");
  Corpus corpus;
  for (std::size_t i = 0; i < config.players; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "player_%03zu", i);
    corpus.players.push_back({id, i % config.archetypes.size()});
  }
  std::mt19937_64 rng(config.seed);
  HandBuilder builder(config, rng);
  std::vector<const Player*> roster;
  for (const auto& p : corpus.players) roster.push_back(&p);
  std::int64_t stage = config.first_stage_id;
  std::size_t round = 0;
  while (corpus.hands.size() < config.hands) {
    std::shuffle(roster.begin(), roster.end(), rng);
    for (std::size_t t = 0; t * config.table_size + 1 < roster.size() && corpus.hands.size() < config.hands; ++t) {
      const auto begin = roster.begin() + static_cast<std::ptrdiff_t>(t * config.table_size);
      const auto end = roster.begin() + static_cast<std::ptrdiff_t>(std::min(roster.size(), (t + 1) * config.table_size));
      std::vector<const Player*> seated(begin, end);
      const std::size_t dealer = round % seated.size();
      corpus.hands.push_back(builder.play(stage++, "SYNTH-" + std::to_string(t + 1), seated, dealer));
    }
    ++round;
  }
  return corpus;
}

std::string to_text(const Corpus& corpus) {
  std::string out;
  for (const auto& h : corpus.hands) {
    out += serialize_hand(h);
    out += '\n';
  }
  return out;
}

}  // namespace hhminer::synth
