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

#include "hhminer/profiler.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "hhminer/error.hpp"

namespace hhminer {
namespace {

// Maps a full action row onto the attributes kept by `model`.
std::vector<double> project_row(const std::vector<double>& full, const MixtureModel& model) {
  const Schema& src = action_schema();
  std::vector<double> out;
  out.reserve(model.schema().size());
  for (const auto& a : model.schema()) {
    auto j = find_attribute(src, a.name);
    if (!j || src[*j].kind != a.kind || src[*j].values != a.values) {
      throw Error(ErrorCode::kSchemaMismatch, "action model attribute '" + a.name + "' is not an action feature");
    }
    out.push_back(full[*j]);
  }
  return out;
}

std::vector<double> frequencies(const std::vector<std::size_t>& counts, std::size_t n) {
  std::vector<double> f(counts.size(), 0.0);
  for (std::size_t c = 0; c < counts.size(); ++c) f[c] = static_cast<double>(counts[c]) / static_cast<double>(n);
  return f;
}

std::vector<double> concatenated(const PlayerProfile& p) {
  std::vector<double> v = *p.pre_freq;
  v.insert(v.end(), p.post_freq->begin(), p.post_freq->end());
  return v;
}

std::vector<std::string> strategy_names(std::size_t k_pre, std::size_t k_post) {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < k_pre; ++c) names.push_back(strategy_attribute_name(StreetGroup::kPreFlop, c));
  for (std::size_t c = 0; c < k_post; ++c) names.push_back(strategy_attribute_name(StreetGroup::kPostFlop, c));
  return names;
}

nlohmann::json optional_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

}  // namespace

void ActionTally::add(ActionKind kind) {
  ++decisions;
  switch (kind) {
    case ActionKind::kFold: ++folds; break;
    case ActionKind::kCheck: ++checks; break;
    case ActionKind::kCall: ++calls; break;
    case ActionKind::kBet: ++bets; break;
    case ActionKind::kRaise: ++raises; break;
    case ActionKind::kAllIn: ++allins; break;
  }
}

std::vector<LabeledAssignment> assign_actions(std::span<const ActionFeatures> rows, const MixtureModel& preflop,
                                              const MixtureModel& postflop) {
  std::vector<LabeledAssignment> out;
  out.reserve(rows.size());
  for (const auto& f : rows) {
    const MixtureModel& m = f.street_group == StreetGroup::kPreFlop ? preflop : postflop;
    auto a = assign_nearest(project_row(to_row(f), m), m);
    out.push_back({f.player_id, f.street_group, a.cluster});
  }
  return out;
}

std::vector<PlayerProfile> build_profiles(std::span<const LabeledAssignment> assignments, const TallyMap& tallies,
                                          std::size_t k_pre, std::size_t k_post, std::size_t min_actions) {
  if (min_actions == 0) throw Error(ErrorCode::kInvalidArgument, "min_actions must be >= 1");
  struct Counts {
    std::vector<std::size_t> pre, post;
  };
  std::map<std::string, Counts> counts;
  auto slot = [&](const std::string& id) -> Counts& {
    auto [it, inserted] = counts.try_emplace(id);
    if (inserted) {
      it->second.pre.assign(k_pre, 0);
      it->second.post.assign(k_post, 0);
    }
    return it->second;
  };
  for (const auto& a : assignments) {
    auto& c = slot(a.player_id);
    auto& v = a.group == StreetGroup::kPreFlop ? c.pre : c.post;
    if (a.cluster >= v.size()) {
      throw Error(ErrorCode::kInvalidArgument, "cluster " + std::to_string(a.cluster) + " out of range");
    }
    ++v[a.cluster];
  }
  for (const auto& [id, t] : tallies) slot(id);

  std::vector<PlayerProfile> out;
  for (const auto& [id, c] : counts) {
    PlayerProfile p;
    p.player_id = id;
    p.n_pre_actions = std::accumulate(c.pre.begin(), c.pre.end(), std::size_t{0});
    p.n_post_actions = std::accumulate(c.post.begin(), c.post.end(), std::size_t{0});
    if (p.n_pre_actions >= min_actions) p.pre_freq = frequencies(c.pre, p.n_pre_actions);
    if (p.n_post_actions >= min_actions) p.post_freq = frequencies(c.post, p.n_post_actions);
    if (auto it = tallies.find(id); it != tallies.end()) p.tally = it->second;
    const auto& t = p.tally;
    if (t.decisions > 0) p.fold_rate = static_cast<double>(t.folds) / static_cast<double>(t.decisions);
    if (t.calls > 0) {
      p.aggression_factor = static_cast<double>(t.bets + t.raises + t.allins) / static_cast<double>(t.calls);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::string strategy_attribute_name(StreetGroup group, std::size_t cluster) {
  return (group == StreetGroup::kPreFlop ? "Pre_c" : "Post_c") + std::to_string(cluster);
}

StrategyModel cluster_players(std::span<const PlayerProfile> profiles, std::uint64_t seed,
                              const StrategyFitConfig& config, const std::string& pre_action_model_id,
                              const std::string& post_action_model_id) {
  std::size_t k_pre = 0, k_post = 0;
  Dataset data;
  data.relation = std::string(kStrategyRelation);
  for (const auto& p : profiles) {
    if (!p.complete()) continue;
    if (data.rows.empty()) {
      k_pre = p.pre_freq->size();
      k_post = p.post_freq->size();
    } else if (p.pre_freq->size() != k_pre || p.post_freq->size() != k_post) {
      throw Error(ErrorCode::kSchemaMismatch, "profiles disagree on the number of action clusters");
    }
    data.rows.push_back(concatenated(p));
  }
  if (data.size() < 2) {
    throw Error(ErrorCode::kTooFewProfiles, std::to_string(data.size()) + " complete profiles, need at least 2");
  }
  for (const auto& name : strategy_names(k_pre, k_post)) data.schema.push_back(Attribute::numeric(name));

  UselessFilterResult filtered;
  try {
    filtered = remove_useless(data, config.min_variance, config.max_dominance);
  } catch (const Error& e) {
    // Identical profiles: nothing varies, so cluster the raw vectors.
    if (e.code() != ErrorCode::kAllAttributesRemoved) throw;
    filtered.dataset = data;
  }

  SelectConfig sc = config.select;
  sc.folds = std::min(sc.folds, filtered.dataset.size());
  Selection sel = select_k(filtered.dataset, seed, sc);

  StrategyModel out;
  out.model = std::move(sel.model);
  out.model.set_removed_attributes(filtered.removed);
  out.k_pre = k_pre;
  out.k_post = k_post;
  out.pre_action_model_id = pre_action_model_id;
  out.post_action_model_id = post_action_model_id;

  const double n = static_cast<double>(data.size());
  for (const auto& comp : out.model.components()) {
    std::vector<double> row(data.schema.size(), 0.0);
    for (std::size_t j = 0; j < data.schema.size(); ++j) {
      auto kept = find_attribute(out.model.schema(), data.schema[j].name);
      if (kept) {
        row[j] = comp.mean[*out.model.numeric_slot(*kept)];
      } else {
        for (const auto& r : data.rows) row[j] += r[j];
        row[j] /= n;
      }
      row[j] = std::clamp(row[j], 0.0, 1.0);
    }
    out.strategy_centroids.push_back(std::move(row));
  }
  return out;
}

ClusterAssignment classify_player(const PlayerProfile& profile, const StrategyModel& model) {
  if (!profile.complete()) {
    throw Error(ErrorCode::kProfileIncomplete, profile.player_id + " lacks a pre-flop or post-flop profile");
  }
  if (profile.pre_freq->size() != model.k_pre || profile.post_freq->size() != model.k_post) {
    throw Error(ErrorCode::kSchemaMismatch, "profile vector lengths differ from the strategy model");
  }
  const auto full = concatenated(profile);
  const auto names = strategy_names(model.k_pre, model.k_post);
  std::vector<double> row;
  for (const auto& a : model.model.schema()) {
    auto it = std::find(names.begin(), names.end(), a.name);
    if (it == names.end()) throw Error(ErrorCode::kSchemaMismatch, "unknown strategy attribute " + a.name);
    row.push_back(full[static_cast<std::size_t>(it - names.begin())]);
  }
  return assign_nearest(row, model.model);
}

ActionPrediction predict_action(std::size_t strategy_cluster, const StrategyModel& model,
                                const MixtureModel& action_model, StreetGroup group) {
  const bool pre = group == StreetGroup::kPreFlop;
  const std::string& expected = pre ? model.pre_action_model_id : model.post_action_model_id;
  if (action_model.id() != expected) {
    throw Error(ErrorCode::kModelMismatch, "action model " + action_model.id() + " differs from " + expected);
  }
  if (strategy_cluster >= model.strategy_centroids.size()) {
    throw Error(ErrorCode::kInvalidArgument, "strategy cluster " + std::to_string(strategy_cluster) + " out of range");
  }
  const std::size_t k = pre ? model.k_pre : model.k_post;
  if (action_model.k() != k) throw Error(ErrorCode::kModelMismatch, "action model has a different k");
  const auto& centroid = model.strategy_centroids[strategy_cluster];
  std::vector<double> freq(centroid.begin() + (pre ? 0 : static_cast<std::ptrdiff_t>(model.k_pre)),
                           centroid.begin() + (pre ? static_cast<std::ptrdiff_t>(model.k_pre)
                                                   : static_cast<std::ptrdiff_t>(model.k_pre + model.k_post)));
  double sum = std::accumulate(freq.begin(), freq.end(), 0.0);
  for (auto& f : freq) f = sum > 0 ? f / sum : 1.0 / static_cast<double>(k);

  const auto& schema = action_model.schema();
  auto action = find_attribute(schema, "action");
  auto betted = find_attribute(schema, "betted_money");
  if (!action || schema[*action].is_numeric() || !betted || !schema[*betted].is_numeric()) {
    throw Error(ErrorCode::kSchemaMismatch, "action model lacks the action or betted_money attribute");
  }
  auto raise = schema[*action].value_index("Raise");
  if (!raise) throw Error(ErrorCode::kSchemaMismatch, "action attribute has no Raise value");

  ActionPrediction out;
  for (std::size_t c = 0; c < k; ++c) {
    const auto& comp = action_model.components()[c];
    out.p_raise += freq[c] * comp.probs[*action_model.nominal_slot(*action)][*raise];
    out.expected_bet_fraction += freq[c] * comp.mean[*action_model.numeric_slot(*betted)];
  }
  out.p_raise = std::clamp(out.p_raise, 0.0, 1.0);
  out.p_call = 1.0 - out.p_raise;
  out.expected_bet_fraction = std::clamp(out.expected_bet_fraction, 0.0, 1.0);
  return out;
}

SklanskyLabel sklansky_classify(const PlayerProfile& profile) {
  if (!profile.fold_rate) throw Error(ErrorCode::kProfileIncomplete, profile.player_id + " has no decisions");
  SklanskyLabel out;
  out.tight = *profile.fold_rate >= kTightFoldRate;
  if (profile.aggression_factor) {
    out.aggressive = *profile.aggression_factor > 1.0;
  } else {
    out.aggressive = true;
    out.af_undefined = true;
  }
  return out;
}

nlohmann::json profile_to_json(const PlayerProfile& p) {
  const auto& t = p.tally;
  return {{"player_id", p.player_id},
          {"pre_freq", p.pre_freq ? nlohmann::json(*p.pre_freq) : nlohmann::json()},
          {"post_freq", p.post_freq ? nlohmann::json(*p.post_freq) : nlohmann::json()},
          {"n_pre_actions", p.n_pre_actions},
          {"n_post_actions", p.n_post_actions},
          {"tally",
           {{"decisions", t.decisions},
            {"folds", t.folds},
            {"checks", t.checks},
            {"calls", t.calls},
            {"bets", t.bets},
            {"raises", t.raises},
            {"allins", t.allins}}},
          {"fold_rate", optional_json(p.fold_rate)},
          {"aggression_factor", optional_json(p.aggression_factor)}};
}

PlayerProfile profile_from_json(const nlohmann::json& j) {
  try {
    PlayerProfile p;
    p.player_id = j.at("player_id");
    if (!j.at("pre_freq").is_null()) p.pre_freq = j.at("pre_freq").get<std::vector<double>>();
    if (!j.at("post_freq").is_null()) p.post_freq = j.at("post_freq").get<std::vector<double>>();
    p.n_pre_actions = j.at("n_pre_actions");
    p.n_post_actions = j.at("n_post_actions");
    const auto& t = j.at("tally");
    p.tally = {t.at("decisions"), t.at("folds"),  t.at("checks"), t.at("calls"),
               t.at("bets"),      t.at("raises"), t.at("allins")};
    if (!j.at("fold_rate").is_null()) p.fold_rate = j.at("fold_rate").get<double>();
    if (!j.at("aggression_factor").is_null()) p.aggression_factor = j.at("aggression_factor").get<double>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaMismatch, std::string("bad profile document: ") + e.what());
  }
}

nlohmann::json strategy_to_json(const StrategyModel& m) {
  return {{"format", "hhminer.strategy/1"},
          {"id", m.id()},
          {"k_pre", m.k_pre},
          {"k_post", m.k_post},
          {"pre_action_model", m.pre_action_model_id},
          {"post_action_model", m.post_action_model_id},
          {"strategy_centroids", m.strategy_centroids},
          {"model", model_to_json(m.model)}};
}

StrategyModel strategy_from_json(const nlohmann::json& j) {
  try {
    StrategyModel m;
    m.model = model_from_json(j.at("model"));
    m.k_pre = j.at("k_pre");
    m.k_post = j.at("k_post");
    m.pre_action_model_id = j.at("pre_action_model");
    m.post_action_model_id = j.at("post_action_model");
    m.strategy_centroids = j.at("strategy_centroids").get<std::vector<std::vector<double>>>();
    if (m.strategy_centroids.size() != m.model.k()) {
      throw Error(ErrorCode::kSchemaMismatch, "strategy centroid count differs from k");
    }
    for (const auto& row : m.strategy_centroids) {
      if (row.size() != m.k_pre + m.k_post) throw Error(ErrorCode::kSchemaMismatch, "strategy centroid width");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaMismatch, std::string("bad strategy document: ") + e.what());
  }
}

void save_strategy(const StrategyModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << strategy_to_json(m).dump(2) << '\n';
}

StrategyModel load_strategy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaMismatch, path + ": " + e.what());
  }
  return strategy_from_json(j);
}

}  // namespace hhminer
