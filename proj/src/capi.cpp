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

#include "hhminer/hhminer.h"

#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hhminer/cards.hpp"
#include "hhminer/em.hpp"
#include "hhminer/equity.hpp"
#include "hhminer/error.hpp"
#include "hhminer/pipeline.hpp"
#include "hhminer/profiler.hpp"
#include "hhminer/synth.hpp"

struct hm_pipeline {
  hhminer::Pipeline pipeline{hhminer::PipelineConfig{}};
  std::string summary;
  std::string value;
};

struct hm_model {
  hhminer::MixtureModel model;
  std::string id;
};

namespace {

thread_local std::string last_error;

hm_status to_status(hhminer::ErrorCode code) {
  return static_cast<hm_status>(static_cast<int>(code) + 1);
}

template <typename F>
hm_status guarded(F&& f) {
  try {
    f();
    return HM_OK;
  } catch (const hhminer::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return HM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HM_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw hhminer::Error(hhminer::ErrorCode::kInvalidArgument, what);
}

template <typename Stage>
hm_status run_stage(hm_pipeline* p, Stage&& stage) {
  return guarded([&] {
    require(p != nullptr, "null pipeline");
    p->summary = stage(p->pipeline);
  });
}

}  // namespace

extern "C" {

const char* hm_version(void) { return "0.1.0"; }

const char* hm_status_name(hm_status status) {
  if (status == HM_OK) return "Ok";
  if (status == HM_ERR_INTERNAL) return "Internal";
  if (status < HM_OK || status > HM_ERR_INTERNAL) return "Unknown";
  static thread_local std::string name;
  name = hhminer::error_code_name(static_cast<hhminer::ErrorCode>(static_cast<int>(status) - 1));
  return name.c_str();
}

const char* hm_last_error(void) { return last_error.c_str(); }

hm_status hm_pipeline_create(hm_pipeline** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = new hm_pipeline;
  });
}

void hm_pipeline_destroy(hm_pipeline* pipeline) { delete pipeline; }

hm_status hm_pipeline_load_config(hm_pipeline* pipeline, const char* path) {
  return guarded([&] {
    require(pipeline && path, "null argument");
    pipeline->pipeline.mutable_config().load(path);
  });
}

hm_status hm_pipeline_set(hm_pipeline* pipeline, const char* key, const char* value) {
  return guarded([&] {
    require(pipeline && key && value, "null argument");
    pipeline->pipeline.mutable_config().set(key, value);
  });
}

hm_status hm_pipeline_get(hm_pipeline* pipeline, const char* key, const char** value) {
  return guarded([&] {
    require(pipeline && key && value, "null argument");
    const auto j = pipeline->pipeline.config().to_json();
    if (!j.contains(key)) throw hhminer::Error(hhminer::ErrorCode::kInvalidConfig, std::string("unknown key '") + key + "'");
    const auto& v = j.at(key);
    pipeline->value = v.is_string() ? v.get<std::string>() : v.dump();
    *value = pipeline->value.c_str();
  });
}

hm_status hm_pipeline_ingest(hm_pipeline* pipeline, const char* const* paths, size_t n_paths) {
  return run_stage(pipeline, [&](hhminer::Pipeline& p) {
    require(paths != nullptr || n_paths == 0, "null paths");
    std::vector<std::string> inputs;
    for (size_t i = 0; i < n_paths; ++i) {
      require(paths[i] != nullptr, "null path");
      inputs.emplace_back(paths[i]);
    }
    return p.ingest(inputs);
  });
}

hm_status hm_pipeline_extract(hm_pipeline* pipeline) {
  return run_stage(pipeline, [](hhminer::Pipeline& p) { return p.extract(); });
}

hm_status hm_pipeline_cluster_actions(hm_pipeline* pipeline) {
  return run_stage(pipeline, [](hhminer::Pipeline& p) { return p.cluster_actions(); });
}

hm_status hm_pipeline_profile(hm_pipeline* pipeline) {
  return run_stage(pipeline, [](hhminer::Pipeline& p) { return p.profile(); });
}

hm_status hm_pipeline_cluster_players(hm_pipeline* pipeline) {
  return run_stage(pipeline, [](hhminer::Pipeline& p) { return p.cluster_players(); });
}

hm_status hm_pipeline_classify(hm_pipeline* pipeline) {
  return run_stage(pipeline, [](hhminer::Pipeline& p) { return p.classify(); });
}

hm_status hm_pipeline_predict(hm_pipeline* pipeline, const char* player) {
  return run_stage(pipeline, [&](hhminer::Pipeline& p) {
    return p.predict(player ? std::optional<std::string>(player) : std::nullopt);
  });
}

hm_status hm_pipeline_export_arff(hm_pipeline* pipeline, const char* street, const char* path) {
  return run_stage(pipeline, [&](hhminer::Pipeline& p) {
    require(street != nullptr, "null street");
    return p.export_arff(street, path ? path : "");
  });
}

hm_status hm_pipeline_report(hm_pipeline* pipeline, const char* models_dir) {
  return run_stage(pipeline, [&](hhminer::Pipeline& p) {
    return p.report(models_dir ? std::optional<std::string>(models_dir) : std::nullopt);
  });
}

const char* hm_pipeline_summary(const hm_pipeline* pipeline) { return pipeline ? pipeline->summary.c_str() : ""; }

hm_status hm_write_reference_models(const char* dir) {
  return guarded([&] {
    require(dir != nullptr, "null directory");
    hhminer::write_reference_models(dir);
  });
}

hm_status hm_synth_write(const char* log_path, const char* truth_path, uint64_t seed, size_t players, size_t hands) {
  return guarded([&] {
    require(log_path != nullptr, "null log path");
    require(players >= 2 && hands >= 1, "need at least 2 players and 1 hand");
    hhminer::synth::Config cfg;
    cfg.seed = seed;
    cfg.players = players;
    cfg.hands = hands;
    const auto corpus = hhminer::synth::generate(cfg);
    std::ofstream log(log_path, std::ios::binary);
    if (!log) throw hhminer::Error(hhminer::ErrorCode::kIo, std::string("cannot write ") + log_path);
    log << hhminer::synth::to_text(corpus);
    if (truth_path) {
      std::ofstream truth(truth_path, std::ios::binary);
      if (!truth) throw hhminer::Error(hhminer::ErrorCode::kIo, std::string("cannot write ") + truth_path);
      truth << "player_id,archetype\n";
      for (const auto& p : corpus.players) truth << p.id << ',' << cfg.archetypes[p.archetype].name << '\n';
    }
  });
}

hm_status hm_hand_strength(const char* hole, const char* board, int n_opponents, double* out) {
  return guarded([&] {
    require(hole && board && out, "null argument");
    *out = hhminer::hand_strength(hhminer::parse_cards(hole), hhminer::parse_cards(board), n_opponents);
  });
}

hm_status hm_hand_potential(const char* hole, const char* board, size_t lookahead_cap, uint64_t seed, double* ppot,
                            double* npot) {
  return guarded([&] {
    require(hole && board && ppot && npot, "null argument");
    const auto hp =
        hhminer::hand_potential(hhminer::parse_cards(hole), hhminer::parse_cards(board), lookahead_cap, seed);
    *ppot = hp.ppot;
    *npot = hp.npot;
  });
}

hm_status hm_win_probability(double hs, double ppot, double npot, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = hhminer::win_probability(hs, ppot, npot);
  });
}

hm_status hm_preflop_win_prob(const char* hole, int n_opponents, int samples, uint64_t seed, double* out) {
  return guarded([&] {
    require(hole && out, "null argument");
    *out = hhminer::preflop_win_prob(hhminer::parse_cards(hole), n_opponents, samples, seed);
  });
}

hm_status hm_model_load(const char* path, hm_model** out) {
  return guarded([&] {
    require(path && out, "null argument");
    auto m = std::make_unique<hm_model>();
    std::ifstream in(path);
    if (!in) throw hhminer::Error(hhminer::ErrorCode::kIo, std::string("cannot read ") + path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw hhminer::Error(hhminer::ErrorCode::kSchemaMismatch, std::string(path) + ": " + e.what());
    }
    // Strategy files wrap a mixture model.
    m->model = j.value("format", "") == "hhminer.strategy/1" ? hhminer::strategy_from_json(j).model
                                                             : hhminer::model_from_json(j);
    m->id = m->model.id();
    *out = m.release();
  });
}

void hm_model_free(hm_model* model) { delete model; }

size_t hm_model_k(const hm_model* model) { return model ? model->model.k() : 0; }

size_t hm_model_n_attributes(const hm_model* model) { return model ? model->model.schema().size() : 0; }

const char* hm_model_id(const hm_model* model) { return model ? model->id.c_str() : ""; }

hm_status hm_model_assign(const hm_model* model, const double* row, size_t n, size_t* cluster, double* distance) {
  return guarded([&] {
    require(model && row && cluster, "null argument");
    const auto a = hhminer::assign_nearest(std::span<const double>(row, n), model->model);
    *cluster = a.cluster;
    if (distance) *distance = a.distance;
  });
}

}  // extern "C"
