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

// Turns replayed decisions into normalized action rows:
//
//   win_prob           showdown equity (Monte Carlo pre-flop, HS/potential after)
//   position           Early / Late acting order in the round
//   possible_earnings  pot before the action / stack, capped at 1
//   action             Call (check, call) or Raise (bet, raise, all-in)
//   min_bet            amount to call / stack, capped at 1
//   betted_money       chips wagered / stack; all-in is exactly 1
//
// Folds carry no card information and never become rows.

#ifndef HHMINER_FEATURES_HPP_
#define HHMINER_FEATURES_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hhminer/dataset.hpp"
#include "hhminer/equity.hpp"
#include "hhminer/game.hpp"

namespace hhminer {

enum class StreetGroup : std::uint8_t { kPreFlop, kPostFlop };
std::string_view street_group_name(StreetGroup g);
StreetGroup street_group_of(Street s);

enum class SimpleAction : std::uint8_t { kCall, kRaise };

// Check/Call -> Call; Bet/Raise/AllIn -> Raise. Throws FoldNotAllowed.
SimpleAction simplify_action(ActionKind kind);

struct ActionFeatures {
  std::string player_id;
  std::int64_t stage_id = 0;
  Street street = Street::kPreFlop;
  StreetGroup street_group = StreetGroup::kPreFlop;
  double win_prob = 0.0;
  PositionLabel position = PositionLabel::kEarly;
  double possible_earnings = 0.0;
  SimpleAction action = SimpleAction::kCall;
  double min_bet = 0.0;
  double betted_money = 0.0;
  ActionKind raw_kind = ActionKind::kCall;

  bool operator==(const ActionFeatures&) const = default;
};

struct FeatureSkip {
  std::string reason;
};

struct ClampCounts {
  std::size_t possible_earnings = 0;
  std::size_t min_bet = 0;
  std::size_t betted_money = 0;
};

// `seed` drives the equity estimators only.
std::variant<ActionFeatures, FeatureSkip> extract_features(const DecisionRecord& record,
                                                           std::span<const Card> hole,
                                                           const EquityConfig& config, std::uint64_t seed,
                                                           ClampCounts* clamps = nullptr);

// Uses the record's showdown-revealed hole cards, or skips.
std::variant<ActionFeatures, FeatureSkip> extract_features(const DecisionRecord& record,
                                                           const EquityConfig& config, std::uint64_t seed,
                                                           ClampCounts* clamps = nullptr);

// Stable seed for one player's equity on one street of one hand.
std::uint64_t decision_seed(std::uint64_t base, std::int64_t stage_id, std::string_view player, Street street);

struct ExtractionStats {
  std::size_t decisions = 0;
  std::size_t rows = 0;
  std::size_t folds = 0;
  std::size_t missing_hole_cards = 0;
  std::size_t missing_board = 0;
  ClampCounts clamps;
};

// Rows for every usable decision of a replayed hand, in decision order.
std::vector<ActionFeatures> extract_game(const Game& game, const EquityConfig& config, std::uint64_t seed,
                                         ExtractionStats* stats = nullptr);

inline constexpr std::string_view kActionRelation = "poker_plays";

// win_prob, position, possible_earnings, action, min_bet, betted_money.
const Schema& action_schema();
std::vector<double> to_row(const ActionFeatures& f);
Dataset to_dataset(std::span<const ActionFeatures> rows);

struct StreetSplit {
  Dataset preflop;
  Dataset postflop;
  std::vector<std::size_t> preflop_index;  // positions in the input
  std::vector<std::size_t> postflop_index;
};

StreetSplit split_by_street(std::span<const ActionFeatures> rows);

struct UselessFilterResult {
  Dataset dataset;
  std::vector<std::string> removed;
};

inline constexpr double kDefaultMinVariance = 1e-4;
inline constexpr double kDefaultMaxDominance = 0.99;

// Drops numeric attributes with population variance below `min_variance` and
// nominal attributes whose most frequent value exceeds `max_dominance`.
// Throws EmptyDataset, AllAttributesRemoved.
UselessFilterResult remove_useless(const Dataset& dataset, double min_variance = kDefaultMinVariance,
                                   double max_dominance = kDefaultMaxDominance);

}  // namespace hhminer

#endif  // HHMINER_FEATURES_HPP_
