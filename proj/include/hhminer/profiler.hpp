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

// Per-player action-cluster frequency profiles, strategy clustering over
// those profiles, and opponent action prediction.

#ifndef HHMINER_PROFILER_HPP_
#define HHMINER_PROFILER_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hhminer/em.hpp"
#include "hhminer/features.hpp"

namespace hhminer {

// Raw decision counts before action simplification.
struct ActionTally {
  std::size_t decisions = 0;
  std::size_t folds = 0;
  std::size_t checks = 0;
  std::size_t calls = 0;
  std::size_t bets = 0;
  std::size_t raises = 0;
  std::size_t allins = 0;

  void add(ActionKind kind);
  bool operator==(const ActionTally&) const = default;
};

using TallyMap = std::map<std::string, ActionTally>;

// One action row mapped to its nearest action cluster.
struct LabeledAssignment {
  std::string player_id;
  StreetGroup group = StreetGroup::kPreFlop;
  std::size_t cluster = 0;
};

// Nearest-cluster label for every row, using the model of the row's street
// group. Rows are projected onto each model's attributes by name.
std::vector<LabeledAssignment> assign_actions(std::span<const ActionFeatures> rows, const MixtureModel& preflop,
                                              const MixtureModel& postflop);

struct PlayerProfile {
  std::string player_id;
  std::optional<std::vector<double>> pre_freq;   // absent below min_actions
  std::optional<std::vector<double>> post_freq;
  std::size_t n_pre_actions = 0;
  std::size_t n_post_actions = 0;
  ActionTally tally;
  std::optional<double> fold_rate;          // folds / decisions
  std::optional<double> aggression_factor;  // (bets + raises + all-ins) / calls

  bool complete() const { return pre_freq.has_value() && post_freq.has_value(); }
  bool operator==(const PlayerProfile&) const = default;
};

inline constexpr std::size_t kDefaultMinActions = 20;

// Profiles sorted by player id, covering every player in either input.
// Throws InvalidArgument when min_actions == 0 or a cluster id is out of range.
std::vector<PlayerProfile> build_profiles(std::span<const LabeledAssignment> assignments, const TallyMap& tallies,
                                          std::size_t k_pre, std::size_t k_post,
                                          std::size_t min_actions = kDefaultMinActions);

std::string strategy_attribute_name(StreetGroup group, std::size_t cluster);  // "Pre_c0", "Post_c3"

struct StrategyModel {
  MixtureModel model;  // removed attributes live in model.removed_attributes()
  std::size_t k_pre = 0;
  std::size_t k_post = 0;
  std::string pre_action_model_id;
  std::string post_action_model_id;
  // One row per strategy cluster over all k_pre + k_post frequencies.
  std::vector<std::vector<double>> strategy_centroids;

  std::string id() const { return model.id(); }
};

struct StrategyFitConfig {
  SelectConfig select;
  double min_variance = kDefaultMinVariance;
  double max_dominance = kDefaultMaxDominance;
};

inline constexpr std::string_view kStrategyRelation = "player_strategies";

// Fits on complete profiles only. Throws TooFewProfiles (< 2 complete).
StrategyModel cluster_players(std::span<const PlayerProfile> profiles, std::uint64_t seed,
                              const StrategyFitConfig& config, const std::string& pre_action_model_id,
                              const std::string& post_action_model_id);

// Throws ProfileIncomplete, SchemaMismatch (wrong vector lengths).
ClusterAssignment classify_player(const PlayerProfile& profile, const StrategyModel& model);

struct ActionPrediction {
  double p_call = 0.0;
  double p_raise = 0.0;
  double expected_bet_fraction = 0.0;
};

// Throws ModelMismatch when `action_model` is not the one the strategy model
// was built against, InvalidArgument for a bad cluster id.
ActionPrediction predict_action(std::size_t strategy_cluster, const StrategyModel& model,
                                const MixtureModel& action_model, StreetGroup group);

struct SklanskyLabel {
  bool tight = false;
  bool aggressive = false;
  bool af_undefined = false;  // no calls; read as infinite AF
};

inline constexpr double kTightFoldRate = 0.72;

// Throws ProfileIncomplete when the player has no decisions.
SklanskyLabel sklansky_classify(const PlayerProfile& profile);

nlohmann::json profile_to_json(const PlayerProfile& p);
PlayerProfile profile_from_json(const nlohmann::json& j);
nlohmann::json strategy_to_json(const StrategyModel& m);
StrategyModel strategy_from_json(const nlohmann::json& j);
void save_strategy(const StrategyModel& m, const std::string& path);
StrategyModel load_strategy(const std::string& path);

}  // namespace hhminer

#endif  // HHMINER_PROFILER_HPP_
