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

#include "hhminer/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "hhminer/error.hpp"

namespace hhminer {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double ratio(Chips num, Chips den, std::size_t* clamp_counter) {
  double v = static_cast<double>(num) / static_cast<double>(den);
  if (v > 1.0) {
    if (clamp_counter) ++*clamp_counter;
    return 1.0;
  }
  return v;
}

}  // namespace

std::string_view street_group_name(StreetGroup g) { return g == StreetGroup::kPreFlop ? "PreFlop" : "PostFlop"; }

StreetGroup street_group_of(Street s) { return s == Street::kPreFlop ? StreetGroup::kPreFlop : StreetGroup::kPostFlop; }

SimpleAction simplify_action(ActionKind kind) {
  switch (kind) {
    case ActionKind::kCheck:
    case ActionKind::kCall: return SimpleAction::kCall;
    case ActionKind::kBet:
    case ActionKind::kRaise:
    case ActionKind::kAllIn: return SimpleAction::kRaise;
    case ActionKind::kFold: break;
  }
  throw Error(ErrorCode::kFoldNotAllowed, "folds have no action row");
}

std::uint64_t decision_seed(std::uint64_t base, std::int64_t stage_id, std::string_view player, Street street) {
  std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a
  for (char c : player) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return splitmix(splitmix(base ^ splitmix(static_cast<std::uint64_t>(stage_id))) ^ h ^
                  (static_cast<std::uint64_t>(street) << 56));
}

std::variant<ActionFeatures, FeatureSkip> extract_features(const DecisionRecord& record, std::span<const Card> hole,
                                                           const EquityConfig& config, std::uint64_t seed,
                                                           ClampCounts* clamps) {
  const Action& a = record.action;
  if (a.kind == ActionKind::kFold) return FeatureSkip{"Fold"};
  if (hole.size() != 2) return FeatureSkip{"MissingHoleCards"};
  const GameState& st = record.state;
  const PlayerAtTable* p = st.find(a.actor);
  if (!p) throw Error(ErrorCode::kUnknownActor, a.actor);
  if (st.round != Street::kPreFlop && st.board.size() < 3) return FeatureSkip{"MissingBoard"};

  ActionFeatures f;
  f.player_id = a.actor;
  f.street = st.round;
  f.street_group = street_group_of(st.round);
  const int opponents = std::max(record.n_opponents, 1);
  if (st.round == Street::kPreFlop) {
    f.win_prob = preflop_win_prob(hole, opponents, config.preflop_samples, seed);
  } else {
    f.win_prob = postflop_equity(hole, st.board, opponents, config, seed).win_prob;
  }
  f.position = position_label(st, a.actor);
  f.possible_earnings = ratio(st.pot, p->stack, clamps ? &clamps->possible_earnings : nullptr);
  f.min_bet = ratio(st.amount_to_call(*p), p->stack, clamps ? &clamps->min_bet : nullptr);
  f.betted_money = a.kind == ActionKind::kAllIn
                       ? 1.0
                       : ratio(a.chips_wagered, p->stack, clamps ? &clamps->betted_money : nullptr);
  f.action = simplify_action(a.kind);
  f.raw_kind = a.kind;
  return f;
}

std::variant<ActionFeatures, FeatureSkip> extract_features(const DecisionRecord& record,
                                                           const EquityConfig& config, std::uint64_t seed,
                                                           ClampCounts* clamps) {
  if (record.action.kind == ActionKind::kFold) return FeatureSkip{"Fold"};
  if (!record.hole_cards) return FeatureSkip{"MissingHoleCards"};
  return extract_features(record, std::span<const Card>(*record.hole_cards), config, seed, clamps);
}

std::vector<ActionFeatures> extract_game(const Game& game, const EquityConfig& config, std::uint64_t seed,
                                         ExtractionStats* stats) {
  ExtractionStats local;
  ExtractionStats& s = stats ? *stats : local;
  std::vector<ActionFeatures> rows;
  // Equity depends only on (player, street, opponents); the seed is fixed per
  // (player, street), so repeated decisions reuse the first computation.
  std::map<std::tuple<std::string, Street, int>, double> preflop_cache;
  std::map<std::pair<std::string, Street>, std::pair<double, HandPotential>> postflop_cache;

  for (const auto& rec : game.decisions) {
    ++s.decisions;
    const Action& a = rec.action;
    if (a.kind == ActionKind::kFold) {
      ++s.folds;
      continue;
    }
    if (!rec.hole_cards) {
      ++s.missing_hole_cards;
      continue;
    }
    const GameState& st = rec.state;
    if (st.round != Street::kPreFlop && st.board.size() < 3) {
      ++s.missing_board;
      continue;
    }
    const std::span<const Card> hole(*rec.hole_cards);
    const std::uint64_t dseed = decision_seed(seed, game.stage_id, a.actor, st.round);
    const int opponents = std::max(rec.n_opponents, 1);
    double win = 0.0;
    if (st.round == Street::kPreFlop) {
      auto key = std::make_tuple(a.actor, st.round, opponents);
      auto it = preflop_cache.find(key);
      if (it == preflop_cache.end()) {
        it = preflop_cache.emplace(key, preflop_win_prob(hole, opponents, config.preflop_samples, dseed)).first;
      }
      win = it->second;
    } else {
      auto key = std::make_pair(a.actor, st.round);
      auto it = postflop_cache.find(key);
      if (it == postflop_cache.end()) {
        const double hs1 = hand_strength(hole, st.board, 1);
        it = postflop_cache.emplace(key, std::make_pair(hs1, hand_potential(hole, st.board, config.lookahead_cap, dseed)))
                 .first;
      }
      const double hs = opponents == 1 ? it->second.first : std::pow(it->second.first, opponents);
      win = win_probability(hs, it->second.second.ppot, it->second.second.npot);
    }

    const PlayerAtTable* p = st.find(a.actor);
    ActionFeatures f;
    f.player_id = a.actor;
    f.stage_id = game.stage_id;
    f.street = st.round;
    f.street_group = street_group_of(st.round);
    f.win_prob = win;
    f.position = position_label(st, a.actor);
    f.possible_earnings = ratio(st.pot, p->stack, &s.clamps.possible_earnings);
    f.min_bet = ratio(st.amount_to_call(*p), p->stack, &s.clamps.min_bet);
    f.betted_money = a.kind == ActionKind::kAllIn ? 1.0 : ratio(a.chips_wagered, p->stack, &s.clamps.betted_money);
    f.action = simplify_action(a.kind);
    f.raw_kind = a.kind;
    rows.push_back(std::move(f));
    ++s.rows;
  }
  return rows;
}

const Schema& action_schema() {
  static const Schema schema = {
      Attribute::numeric("win_prob"),
      Attribute::nominal("position", {"Early", "Late"}),
      Attribute::numeric("possible_earnings"),
      Attribute::nominal("action", {"Call", "Raise"}),
      Attribute::numeric("min_bet"),
      Attribute::numeric("betted_money"),
  };
  return schema;
}

std::vector<double> to_row(const ActionFeatures& f) {
  return {f.win_prob,
          f.position == PositionLabel::kEarly ? 0.0 : 1.0,
          f.possible_earnings,
          f.action == SimpleAction::kCall ? 0.0 : 1.0,
          f.min_bet,
          f.betted_money};
}

Dataset to_dataset(std::span<const ActionFeatures> rows) {
  Dataset ds;
  ds.relation = std::string(kActionRelation);
  ds.schema = action_schema();
  ds.rows.reserve(rows.size());
  for (const auto& f : rows) ds.rows.push_back(to_row(f));
  return ds;
}

StreetSplit split_by_street(std::span<const ActionFeatures> rows) {
  StreetSplit out;
  std::vector<ActionFeatures> pre, post;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].street_group == StreetGroup::kPreFlop) {
      pre.push_back(rows[i]);
      out.preflop_index.push_back(i);
    } else {
      post.push_back(rows[i]);
      out.postflop_index.push_back(i);
    }
  }
  out.preflop = to_dataset(pre);
  out.postflop = to_dataset(post);
  return out;
}

UselessFilterResult remove_useless(const Dataset& dataset, double min_variance, double max_dominance) {
  if (dataset.empty()) throw Error(ErrorCode::kEmptyDataset, "remove_useless on an empty dataset");
  const double n = static_cast<double>(dataset.size());
  std::vector<std::string> keep;
  UselessFilterResult out;
  for (std::size_t j = 0; j < dataset.schema.size(); ++j) {
    const auto& a = dataset.schema[j];
    bool useless = false;
    if (a.is_numeric()) {
      double mean = 0.0;
      for (const auto& r : dataset.rows) mean += r[j];
      mean /= n;
      double var = 0.0;
      for (const auto& r : dataset.rows) var += (r[j] - mean) * (r[j] - mean);
      var /= n;
      useless = var < min_variance;
    } else {
      std::vector<std::size_t> counts(a.values.size(), 0);
      for (const auto& r : dataset.rows) ++counts.at(static_cast<std::size_t>(r[j]));
      const double top = static_cast<double>(*std::max_element(counts.begin(), counts.end()));
      useless = top / n > max_dominance;
    }
    if (useless) {
      out.removed.push_back(a.name);
    } else {
      keep.push_back(a.name);
    }
  }
  if (keep.empty()) throw Error(ErrorCode::kAllAttributesRemoved, "every attribute was filtered out");
  out.dataset = dataset.project(keep);
  return out;
}

}  // namespace hhminer
