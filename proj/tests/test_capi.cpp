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

#include <cmath>
#include <filesystem>
#include <string>

#include "hhminer/hhminer.h"
#include "test_util.hpp"

namespace fs = std::filesystem;

TEST_CASE("version and status names") {
  CHECK(std::string(hm_version()) == "0.1.0");
  CHECK(std::string(hm_status_name(HM_OK)) == "Ok");
  CHECK(std::string(hm_status_name(HM_ERR_MODEL_MISMATCH)) == "ModelMismatch");
  CHECK(std::string(hm_status_name(HM_ERR_MISSING_UPSTREAM)) == "MissingUpstream");
  CHECK(std::string(hm_status_name(HM_ERR_INTERNAL)) == "Internal");
}

TEST_CASE("equity through the C interface") {
  double hs = 0.0;
  REQUIRE(hm_hand_strength("2c 3d", "As Ks Qs Js Ts", 1, &hs) == HM_OK);
  CHECK(hs == 0.5);
  double ppot = -1, npot = -1;
  REQUIRE(hm_hand_potential("As Ks", "Qs Js Ts", 1081, 0, &ppot, &npot) == HM_OK);
  CHECK(npot == 0.0);
  double w = 0.0;
  REQUIRE(hm_win_probability(0.5, 0.2, 0.1, &w) == HM_OK);
  CHECK(w == 0.5 * 0.9 + 0.5 * 0.2);
  double p = 0.0;
  REQUIRE(hm_preflop_win_prob("As Ah", 1, 2000, 1, &p) == HM_OK);
  CHECK(p > 0.8);

  CHECK(hm_hand_strength("As As", "Kd 7c 2h", 1, &hs) == HM_ERR_DUPLICATE_CARD);
  CHECK(std::string(hm_last_error()).find("DuplicateCard") != std::string::npos);
  CHECK(hm_hand_strength("As Kd", "", 1, &hs) == HM_ERR_PRE_FLOP_BOARD);
  CHECK(hm_win_probability(2.0, 0, 0, &w) == HM_ERR_OUT_OF_RANGE_INPUT);
  CHECK(hm_hand_strength("Xx", "Kd 7c 2h", 1, &hs) != HM_OK);
  CHECK(hm_hand_strength(nullptr, "Kd 7c 2h", 1, &hs) == HM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("pipeline handle") {
  const auto dir = testutil::temp_dir("capi");
  hm_pipeline* p = nullptr;
  REQUIRE(hm_pipeline_create(&p) == HM_OK);
  CHECK(hm_pipeline_set(p, "out", dir.string().c_str()) == HM_OK);
  CHECK(hm_pipeline_set(p, "equity.preflop_samples", "100") == HM_OK);
  CHECK(hm_pipeline_set(p, "equity.lookahead_cap", "30") == HM_OK);
  CHECK(hm_pipeline_set(p, "em.k_max", "5") == HM_OK);
  CHECK(hm_pipeline_set(p, "em.folds", "5") == HM_OK);
  CHECK(hm_pipeline_set(p, "bogus", "1") == HM_ERR_INVALID_CONFIG);
  const char* value = nullptr;
  REQUIRE(hm_pipeline_get(p, "em.k_max", &value) == HM_OK);
  CHECK(std::string(value) == "5");
  REQUIRE(hm_pipeline_get(p, "out", &value) == HM_OK);
  CHECK(std::string(value) == dir.string());

  CHECK(hm_pipeline_extract(p) == HM_ERR_MISSING_UPSTREAM);
  const std::string input = testutil::data_path("sample_100.txt");
  const char* inputs[] = {input.c_str()};
  REQUIRE(hm_pipeline_ingest(p, inputs, 1) == HM_OK);
  CHECK(std::string(hm_pipeline_summary(p)).rfind("100 hands, 0 skipped", 0) == 0);
  REQUIRE(hm_pipeline_extract(p) == HM_OK);
  REQUIRE(hm_pipeline_cluster_actions(p) == HM_OK);
  REQUIRE(hm_pipeline_profile(p) == HM_OK);
  REQUIRE(hm_pipeline_cluster_players(p) == HM_OK);
  REQUIRE(hm_pipeline_classify(p) == HM_OK);
  REQUIRE(hm_pipeline_predict(p, "player_000") == HM_OK);
  CHECK(std::string(hm_pipeline_summary(p)).find("player_000") != std::string::npos);
  CHECK(hm_pipeline_predict(p, "nobody") == HM_ERR_INVALID_ARGUMENT);
  REQUIRE(hm_pipeline_export_arff(p, "preflop", nullptr) == HM_OK);
  CHECK(fs::exists(dir / "poker_plays_preflop.arff"));
  CHECK(hm_pipeline_export_arff(p, "river", nullptr) == HM_ERR_INVALID_ARGUMENT);
  REQUIRE(hm_pipeline_report(p, nullptr) == HM_OK);
  CHECK(fs::exists(dir / "report" / "histograms.csv"));

  hm_model* m = nullptr;
  REQUIRE(hm_model_load((dir / "action_model_preflop.json").string().c_str(), &m) == HM_OK);
  CHECK(hm_model_k(m) >= 1);
  CHECK(hm_model_n_attributes(m) >= 1);
  CHECK(std::string(hm_model_id(m)).size() == 16);
  hm_model_free(m);
  hm_pipeline_destroy(p);
}

TEST_CASE("model handle on the reference models") {
  const auto dir = testutil::temp_dir("capi_ref");
  REQUIRE(hm_write_reference_models(dir.string().c_str()) == HM_OK);
  hm_model* m = nullptr;
  REQUIRE(hm_model_load((dir / "action_model_preflop.json").string().c_str(), &m) == HM_OK);
  CHECK(hm_model_k(m) == 6);
  REQUIRE(hm_model_n_attributes(m) == 5);
  // Cluster #5: win_prob 0.4703, Early, 0.004, Raise, 0.008.
  const double row[] = {0.4703, 0, 0.004, 1, 0.008};
  std::size_t cluster = 99;
  double distance = -1;
  REQUIRE(hm_model_assign(m, row, 5, &cluster, &distance) == HM_OK);
  CHECK(cluster == 5);
  CHECK(distance == 0.0);
  CHECK(hm_model_assign(m, row, 4, &cluster, &distance) == HM_ERR_SCHEMA_MISMATCH);
  hm_model_free(m);

  REQUIRE(hm_model_load((dir / "strategy_model.json").string().c_str(), &m) == HM_OK);
  CHECK(hm_model_k(m) == 7);
  hm_model_free(m);
  CHECK(hm_model_load((dir / "missing.json").string().c_str(), &m) == HM_ERR_IO);
}

TEST_CASE("synthetic corpus writer") {
  const auto dir = testutil::temp_dir("capi_synth");
  const auto log = (dir / "log.txt").string();
  const auto truth = (dir / "truth.csv").string();
  REQUIRE(hm_synth_write(log.c_str(), truth.c_str(), 3, 12, 20) == HM_OK);
  const auto text = testutil::read_file(log);
  std::size_t hands = 0;
  for (std::size_t pos = 0; (pos = text.find("Stage #", pos)) != std::string::npos; ++pos) ++hands;
  CHECK(hands == 20);
  CHECK(testutil::read_file(truth).rfind("player_id,archetype\nplayer_000,tight-aggressive\n", 0) == 0);
  CHECK(hm_synth_write(log.c_str(), nullptr, 3, 1, 20) == HM_ERR_INVALID_ARGUMENT);
}
