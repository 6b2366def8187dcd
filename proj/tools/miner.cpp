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

// miner: command-line front end to the hhminer C API.
//
//   miner <command> [--config FILE] [--seed N] [--out DIR] [--set KEY=VALUE]...
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 model mismatch.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hhminer/hhminer.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitModelMismatch = 3;

int exit_code(hm_status status) {
  switch (status) {
    case HM_OK:
      return 0;
    case HM_ERR_INVALID_ARGUMENT:
    case HM_ERR_INVALID_CONFIG:
      return kExitUsage;
    case HM_ERR_MODEL_MISMATCH:
      return kExitModelMismatch;
    default:
      return kExitData;
  }
}

int report(hm_status status) {
  if (status != HM_OK) std::fprintf(stderr, "miner: %s\n", hm_last_error());
  return exit_code(status);
}

struct Globals {
  std::string config;
  std::optional<std::string> seed;
  std::optional<std::string> out;
  std::vector<std::string> settings;
};

hm_status configure(hm_pipeline* p, const Globals& g) {
  hm_status s = HM_OK;
  if (!g.config.empty() && (s = hm_pipeline_load_config(p, g.config.c_str())) != HM_OK) return s;
  for (const auto& kv : g.settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "miner: --set expects KEY=VALUE, got '%s'\n", kv.c_str());
      return HM_ERR_INVALID_ARGUMENT;
    }
    if ((s = hm_pipeline_set(p, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str())) != HM_OK) return s;
  }
  if (g.seed && (s = hm_pipeline_set(p, "seed", g.seed->c_str())) != HM_OK) return s;
  if (g.out && (s = hm_pipeline_set(p, "out", g.out->c_str())) != HM_OK) return s;
  return s;
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mine player strategies from no-limit hold'em hand histories."};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "seed for every randomized stage");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--set", g.settings, "override a configuration key (KEY=VALUE)");

  std::vector<std::string> inputs;
  auto* ingest = app.add_subcommand("ingest", "parse and replay hand logs into the hand archive");
  ingest->add_option("inputs", inputs, "hand log files")->required()->check(CLI::ExistingFile);

  auto* run = app.add_subcommand("run", "ingest, then run every stage through predict");
  run->add_option("inputs", inputs, "hand log files")->required()->check(CLI::ExistingFile);

  auto* extract = app.add_subcommand("extract", "compute action rows and ARFF datasets");
  auto* cluster_actions = app.add_subcommand("cluster-actions", "fit the pre-flop and post-flop action models");
  auto* profile = app.add_subcommand("profile", "build per-player strategy profiles");
  auto* cluster_players = app.add_subcommand("cluster-players", "fit the strategy model");
  auto* classify = app.add_subcommand("classify", "assign players to strategy clusters");

  std::optional<std::string> player;
  auto* predict = app.add_subcommand("predict", "predict actions per strategy cluster");
  predict->add_option("--player", player, "also classify and predict for this player");

  std::string street = "all";
  std::optional<std::string> arff_path;
  auto* export_arff = app.add_subcommand("export-arff", "write action rows as ARFF");
  export_arff->add_option("--street", street, "all, preflop or postflop")
      ->check(CLI::IsMember({"all", "preflop", "postflop"}));
  export_arff->add_option("-o,--output", arff_path, "ARFF path (default: in the output directory)");

  std::optional<std::string> models_dir;
  auto* report_cmd = app.add_subcommand("report", "write centroid tables and feature histograms");
  report_cmd->add_option("--models", models_dir, "directory holding the model files");

  std::string synth_out;
  std::optional<std::string> truth;
  std::size_t players = 150;
  std::size_t hands = 800;
  auto* synth = app.add_subcommand("synth", "generate a scripted three-archetype corpus");
  synth->add_option("-o,--output", synth_out, "hand log path")->required();
  synth->add_option("--truth", truth, "planted labels CSV path");
  synth->add_option("--players", players, "number of players")->check(CLI::Range(2, 100000));
  synth->add_option("--hands", hands, "number of hands")->check(CLI::Range(1, 10000000));

  std::string ref_dir;
  auto* reference = app.add_subcommand("reference-models", "write the models of the published centroid tables");
  reference->add_option("dir", ref_dir, "output directory")->required();

  std::string hole;
  std::string board;
  int opponents = 1;
  int samples = 2000;
  std::size_t cap = 1000;
  auto* equity = app.add_subcommand("equity", "hand strength, potential and win probability");
  equity->add_option("--hole", hole, "two hole cards, e.g. \"As Kh\"")->required();
  equity->add_option("--board", board, "zero, three, four or five board cards");
  equity->add_option("--opponents", opponents, "number of opponents")->check(CLI::Range(1, 22));
  equity->add_option("--samples", samples, "pre-flop Monte Carlo samples")->check(CLI::PositiveNumber);
  equity->add_option("--lookahead-cap", cap, "maximum sampled runouts")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (reference->parsed()) return report(hm_write_reference_models(ref_dir.c_str()));

  hm_pipeline* p = nullptr;
  if (hm_status s = hm_pipeline_create(&p); s != HM_OK) return report(s);
  std::unique_ptr<hm_pipeline, void (*)(hm_pipeline*)> guard(p, hm_pipeline_destroy);
  if (hm_status s = configure(p, g); s != HM_OK) return report(s);

  if (synth->parsed()) {
    const char* seed = nullptr;
    hm_pipeline_get(p, "seed", &seed);
    return report(hm_synth_write(synth_out.c_str(), truth ? truth->c_str() : nullptr,
                                 std::stoull(seed), players, hands));
  }

  if (equity->parsed()) {
    const char* seed_text = nullptr;
    hm_pipeline_get(p, "seed", &seed_text);
    const std::uint64_t seed = std::stoull(seed_text);
    double v = 0.0;
    if (board.empty()) {
      if (hm_status s = hm_preflop_win_prob(hole.c_str(), opponents, samples, seed, &v); s != HM_OK) return report(s);
      std::printf("win_prob %.6f\n", v);
      return 0;
    }
    double hs = 0.0, ppot = 0.0, npot = 0.0;
    if (hm_status s = hm_hand_strength(hole.c_str(), board.c_str(), opponents, &hs); s != HM_OK) return report(s);
    if (hm_status s = hm_hand_potential(hole.c_str(), board.c_str(), cap, seed, &ppot, &npot); s != HM_OK) {
      return report(s);
    }
    if (hm_status s = hm_win_probability(hs, ppot, npot, &v); s != HM_OK) return report(s);
    std::printf("hs %.6f\nppot %.6f\nnpot %.6f\nwin_prob %.6f\n", hs, ppot, npot, v);
    return 0;
  }

  auto step = [&](hm_status s) {
    if (s == HM_OK) std::printf("%s\n", hm_pipeline_summary(p));
    return s;
  };

  hm_status s = HM_OK;
  if (ingest->parsed()) {
    const auto paths = c_strings(inputs);
    s = step(hm_pipeline_ingest(p, paths.data(), paths.size()));
  } else if (run->parsed()) {
    const auto paths = c_strings(inputs);
    if ((s = step(hm_pipeline_ingest(p, paths.data(), paths.size()))) == HM_OK &&
        (s = step(hm_pipeline_extract(p))) == HM_OK && (s = step(hm_pipeline_cluster_actions(p))) == HM_OK &&
        (s = step(hm_pipeline_profile(p))) == HM_OK && (s = step(hm_pipeline_cluster_players(p))) == HM_OK &&
        (s = step(hm_pipeline_classify(p))) == HM_OK && (s = step(hm_pipeline_predict(p, nullptr))) == HM_OK) {
      s = step(hm_pipeline_report(p, nullptr));
    }
  } else if (extract->parsed()) {
    s = step(hm_pipeline_extract(p));
  } else if (cluster_actions->parsed()) {
    s = step(hm_pipeline_cluster_actions(p));
  } else if (profile->parsed()) {
    s = step(hm_pipeline_profile(p));
  } else if (cluster_players->parsed()) {
    s = step(hm_pipeline_cluster_players(p));
  } else if (classify->parsed()) {
    s = step(hm_pipeline_classify(p));
  } else if (predict->parsed()) {
    s = step(hm_pipeline_predict(p, player ? player->c_str() : nullptr));
  } else if (export_arff->parsed()) {
    s = step(hm_pipeline_export_arff(p, street.c_str(), arff_path ? arff_path->c_str() : nullptr));
  } else if (report_cmd->parsed()) {
    s = step(hm_pipeline_report(p, models_dir ? models_dir->c_str() : nullptr));
  }
  return report(s);
}
