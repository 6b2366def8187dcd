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

#include <algorithm>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "hhminer/error.hpp"
#include "hhminer/pipeline.hpp"
#include "hhminer/profiler.hpp"

using namespace hhminer;

namespace {

std::vector<LabeledAssignment> labels(const std::string& player, StreetGroup g, std::vector<std::size_t> clusters) {
  std::vector<LabeledAssignment> out;
  for (auto c : clusters) out.push_back({player, g, c});
  return out;
}

std::vector<std::size_t> repeat(std::size_t cluster, std::size_t n) { return std::vector<std::size_t>(n, cluster); }

// Players whose actions land on `pre` / `post` clusters with probability
// `focus`, otherwise uniformly.
std::vector<PlayerProfile> planted(std::size_t players, std::size_t pre, std::size_t post, double focus,
                                   const std::string& prefix, std::mt19937_64& rng) {
  std::vector<LabeledAssignment> all;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> any_pre(0, 5), any_post(0, 4);
  for (std::size_t p = 0; p < players; ++p) {
    const std::string id = prefix + std::to_string(p);
    for (int i = 0; i < 150; ++i) {
      all.push_back({id, StreetGroup::kPreFlop, u(rng) < focus ? pre : any_pre(rng)});
      all.push_back({id, StreetGroup::kPostFlop, u(rng) < focus ? post : any_post(rng)});
    }
  }
  return build_profiles(all, {}, 6, 5, 20);
}

StrategyFitConfig fit_config() {
  PipelineConfig cfg;
  cfg.em_folds = 5;
  cfg.em_k_max = 6;
  // Frequency noise from 150 draws per group is about 0.03 per cell.
  cfg.strategy_min_stddev = 0.05;
  return cfg.strategy_fit();
}

PlayerProfile with_counts(std::size_t folds, std::size_t calls, std::size_t bets, std::size_t raises,
                          std::size_t other) {
  TallyMap t;
  auto& a = t["p"];
  a.folds = folds;
  a.calls = calls;
  a.bets = bets;
  a.raises = raises;
  a.checks = other;
  a.decisions = folds + calls + bets + raises + other;
  return build_profiles({}, t, 6, 5, 20)[0];
}

}  // namespace

TEST_CASE("tally counts each action kind") {
  ActionTally t;
  for (auto k : {ActionKind::kFold, ActionKind::kCheck, ActionKind::kCall, ActionKind::kBet, ActionKind::kRaise,
                 ActionKind::kAllIn, ActionKind::kCall}) {
    t.add(k);
  }
  CHECK(t.decisions == 7);
  CHECK(t.calls == 2);
  CHECK(t.allins == 1);
}

TEST_CASE("frequency vectors") {
  auto a = labels("solo", StreetGroup::kPreFlop, repeat(5, 25));
  auto b = labels("solo", StreetGroup::kPostFlop, repeat(1, 30));
  a.insert(a.end(), b.begin(), b.end());
  auto p = build_profiles(a, {}, 6, 5, 20);
  REQUIRE(p.size() == 1);
  CHECK(p[0].pre_freq == std::vector<double>{0, 0, 0, 0, 0, 1});
  CHECK(p[0].post_freq == std::vector<double>{0, 1, 0, 0, 0});
  CHECK(p[0].complete());

  auto half = labels("half", StreetGroup::kPreFlop, {0, 0, 2, 2});
  p = build_profiles(half, {}, 6, 5, 1);
  CHECK(p[0].pre_freq == std::vector<double>{0.5, 0, 0.5, 0, 0, 0});
  CHECK_FALSE(p[0].post_freq.has_value());
  CHECK_FALSE(p[0].complete());
}

TEST_CASE("vectors below min_actions are absent") {
  auto a = labels("few", StreetGroup::kPreFlop, repeat(0, 19));
  auto p = build_profiles(a, {}, 6, 5, 20);
  CHECK_FALSE(p[0].pre_freq.has_value());
  CHECK(p[0].n_pre_actions == 19);
  CHECK_THROWS_AS(build_profiles(a, {}, 6, 5, 0), Error);
  auto bad = labels("bad", StreetGroup::kPreFlop, {6});
  CHECK_THROWS_AS(build_profiles(bad, {}, 6, 5, 1), Error);
}

TEST_CASE("frequency vectors sum to one") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> c6(0, 5), c5(0, 4), n(1, 80);
  std::vector<LabeledAssignment> all;
  for (int p = 0; p < 50; ++p) {
    const std::string id = "p" + std::to_string(p);
    for (std::size_t i = 0, m = n(rng); i < m; ++i) all.push_back({id, StreetGroup::kPreFlop, c6(rng)});
    for (std::size_t i = 0, m = n(rng); i < m; ++i) all.push_back({id, StreetGroup::kPostFlop, c5(rng)});
  }
  for (const auto& p : build_profiles(all, {}, 6, 5, 1)) {
    for (const auto* v : {&p.pre_freq, &p.post_freq}) {
      REQUIRE(v->has_value());
      CHECK(std::abs(std::accumulate((*v)->begin(), (*v)->end(), 0.0) - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("fold rate and aggression factor") {
  const auto p = with_counts(80, 5, 4, 6, 5);
  CHECK(*p.fold_rate == 0.8);
  CHECK(*p.aggression_factor == 2.0);
  auto label = sklansky_classify(p);
  CHECK(label.tight);
  CHECK(label.aggressive);

  const auto boundary = with_counts(72, 10, 5, 5, 8);
  CHECK(*boundary.fold_rate == 0.72);
  CHECK(sklansky_classify(boundary).tight);
  const auto loose = with_counts(71, 10, 5, 5, 9);
  CHECK_FALSE(sklansky_classify(loose).tight);

  const auto passive = with_counts(10, 20, 5, 5, 0);
  CHECK(*passive.aggression_factor == 0.5);
  CHECK_FALSE(sklansky_classify(passive).aggressive);

  const auto no_calls = with_counts(10, 0, 5, 5, 0);
  CHECK_FALSE(no_calls.aggression_factor.has_value());
  CHECK(sklansky_classify(no_calls).af_undefined);

  PlayerProfile empty;
  CHECK_THROWS_AS(sklansky_classify(empty), Error);
}

TEST_CASE("ten bets and raises over five calls") {
  const auto p = with_counts(0, 5, 4, 6, 0);
  CHECK(*p.aggression_factor == 2.0);
  CHECK(sklansky_classify(p).aggressive);
}

TEST_CASE("identical profiles form one cluster") {
  std::vector<PlayerProfile> ps;
  for (int i = 0; i < 30; ++i) {
    PlayerProfile p;
    p.player_id = "clone" + std::to_string(i);
    p.pre_freq = std::vector<double>{0.2, 0.1, 0.3, 0.1, 0.1, 0.2};
    p.post_freq = std::vector<double>{0.4, 0.1, 0.2, 0.2, 0.1};
    ps.push_back(p);
  }
  const auto sm = cluster_players(ps, 1, fit_config(), "pre", "post");
  CHECK(sm.model.k() == 1);
  const auto a = classify_player(ps[0], sm);
  CHECK(a.cluster == 0);
  CHECK(a.distance == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("planted strategies are recovered") {
  std::mt19937_64 rng(17);
  auto a = planted(40, 5, 1, 0.85, "a", rng);
  auto b = planted(40, 2, 4, 0.85, "b", rng);
  std::vector<PlayerProfile> all = a;
  all.insert(all.end(), b.begin(), b.end());
  const auto sm = cluster_players(all, 2, fit_config(), "pre", "post");
  REQUIRE(sm.model.k() == 2);

  // Planted frequency: focus + (1 - focus) / k on the focus cluster.
  const double pre_main = 0.85 + 0.15 / 6, pre_other = 0.15 / 6;
  const double post_main = 0.85 + 0.15 / 5, post_other = 0.15 / 5;
  for (const auto& group : {std::pair{&a, std::pair{5u, 1u}}, std::pair{&b, std::pair{2u, 4u}}}) {
    const auto cluster = classify_player((*group.first)[0], sm).cluster;
    for (const auto& p : *group.first) CHECK(classify_player(p, sm).cluster == cluster);
    const auto& c = sm.strategy_centroids[cluster];
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(std::abs(c[i] - (i == group.second.first ? pre_main : pre_other)) <= 0.05);
    }
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(std::abs(c[6 + i] - (i == group.second.second ? post_main : post_other)) <= 0.05);
    }
  }

  // Classification does not depend on list order.
  std::vector<PlayerProfile> shuffled = all;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  for (const auto& p : shuffled) {
    const auto it = std::find_if(all.begin(), all.end(), [&](const auto& q) { return q.player_id == p.player_id; });
    CHECK(classify_player(p, sm).cluster == classify_player(*it, sm).cluster);
  }
}

TEST_CASE("strategy fitting preconditions") {
  std::mt19937_64 rng(1);
  auto one = planted(1, 0, 0, 0.9, "x", rng);
  CHECK_THROWS_AS(cluster_players(one, 1, fit_config(), "pre", "post"), Error);
  PlayerProfile partial;
  partial.player_id = "partial";
  partial.pre_freq = std::vector<double>(6, 1.0 / 6);
  auto two = planted(10, 0, 0, 0.9, "y", rng);
  const auto sm = cluster_players(two, 1, fit_config(), "pre", "post");
  try {
    classify_player(partial, sm);
    FAIL("expected ProfileIncomplete");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kProfileIncomplete);
  }
  partial.post_freq = std::vector<double>(4, 0.25);
  CHECK_THROWS_AS(classify_player(partial, sm), Error);
}

TEST_CASE("a profile equal to a centroid classifies with distance zero") {
  const StrategyModel sm = reference_strategy_model();
  for (std::size_t c = 0; c < sm.model.k(); ++c) {
    PlayerProfile p;
    p.player_id = "c" + std::to_string(c);
    p.pre_freq = std::vector<double>(sm.strategy_centroids[c].begin(), sm.strategy_centroids[c].begin() + 6);
    p.post_freq = std::vector<double>(sm.strategy_centroids[c].begin() + 6, sm.strategy_centroids[c].end());
    const auto a = classify_player(p, sm);
    CHECK(a.cluster == c);
    CHECK(a.distance == 0.0);
  }
}

TEST_CASE("predicted actions mix the action centroids") {
  StrategyModel sm = reference_strategy_model();
  const MixtureModel pre = reference_preflop_model();
  const MixtureModel post = reference_postflop_model();

  // Concentrated on pre-flop cluster 5 (a pure raise).
  sm.strategy_centroids[0] = {0, 0, 0, 0, 0, 1, 0.2, 0.2, 0.2, 0.2, 0.2};
  auto p = predict_action(0, sm, pre, StreetGroup::kPreFlop);
  CHECK(p.p_raise == 1.0);
  CHECK(p.p_call == 0.0);
  CHECK(p.expected_bet_fraction == doctest::Approx(0.008));

  // Uniform over post-flop clusters: the plain centroid average.
  p = predict_action(0, sm, post, StreetGroup::kPostFlop);
  double raise = 0.0, bet = 0.0;
  for (const auto& c : post.components()) {
    raise += c.probs[1][1] / 5;
    bet += c.mean[2] / 5;
  }
  CHECK(p.p_raise == doctest::Approx(raise).epsilon(1e-12));
  CHECK(p.expected_bet_fraction == doctest::Approx(bet).epsilon(1e-12));
  CHECK(p.p_call + p.p_raise == doctest::Approx(1.0));

  CHECK_THROWS_AS(predict_action(0, sm, post, StreetGroup::kPreFlop), Error);
  CHECK_THROWS_AS(predict_action(99, sm, pre, StreetGroup::kPreFlop), Error);
}

TEST_CASE("profiles and strategy models round-trip through JSON") {
  const auto p = with_counts(3, 4, 5, 6, 7);
  CHECK(profile_from_json(profile_to_json(p)) == p);
  const StrategyModel sm = reference_strategy_model();
  const StrategyModel back = strategy_from_json(strategy_to_json(sm));
  CHECK(back.model.components() == sm.model.components());
  CHECK(back.strategy_centroids == sm.strategy_centroids);
  CHECK(back.pre_action_model_id == sm.pre_action_model_id);
  CHECK(back.id() == sm.id());
}
