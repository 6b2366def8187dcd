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

// File-based mining pipeline. Each stage reads the artifacts of the previous
// stages from the output directory, writes its own, and records a run
// manifest (manifest_<stage>.json).
//
//   ingest            logs          -> hands.jsonl
//   extract           hands.jsonl   -> rows.jsonl, tallies.json, preflop.arff, postflop.arff
//   cluster-actions   rows.jsonl    -> action_model_preflop.json, action_model_postflop.json
//   profile           rows + models -> profiles.json, profiles.csv, assignments.csv
//   cluster-players   profiles.json -> strategy_model.json
//   classify          profiles + strategy model -> classification.csv
//   predict           strategy + action models  -> predictions.csv
//   export-arff       rows.jsonl    -> ARFF file
//   report            models (+ rows.jsonl)     -> report/*.csv

#ifndef HHMINER_PIPELINE_HPP_
#define HHMINER_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hhminer/em.hpp"
#include "hhminer/equity.hpp"
#include "hhminer/features.hpp"
#include "hhminer/handlog.hpp"
#include "hhminer/profiler.hpp"

namespace hhminer {

struct PipelineConfig {
  std::uint64_t seed = 42;
  EquityConfig equity;
  double min_variance = kDefaultMinVariance;
  double max_dominance = kDefaultMaxDominance;
  double em_tol = 1e-6;
  std::size_t em_max_iter = 100;
  std::size_t em_folds = 10;
  std::size_t em_k_max = 12;
  double em_min_improvement = 1e-3;
  double dual_threshold = kDefaultDualThreshold;
  double action_min_stddev = 0.01;
  double strategy_min_stddev = 0.03;
  std::size_t min_actions = kDefaultMinActions;
  std::string out = "out";

  // Applies one "key=value" setting. Throws InvalidConfig.
  void set(const std::string& key, const std::string& value);
  // Reads "key = value" lines; '#' starts a comment. Throws Io, InvalidConfig.
  void load(const std::string& path);
  // Throws InvalidConfig when a value lies outside its documented range.
  void validate() const;

  SelectConfig action_select() const;
  StrategyFitConfig strategy_fit() const;
  nlohmann::json to_json() const;
};

// Keys accepted by PipelineConfig::set.
const std::vector<std::string>& config_keys();

struct IngestSummary {
  std::size_t hands = 0;
  std::size_t skipped = 0;
  std::size_t inconsistent = 0;
};

class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config) : config_(std::move(config)) {}

  const PipelineConfig& config() const { return config_; }
  PipelineConfig& mutable_config() { return config_; }

  // Each stage returns a one-paragraph human-readable summary.
  // Throws Error (MissingUpstream, ModelMismatch, EmptyDataset, ...).
  std::string ingest(const std::vector<std::string>& inputs);
  std::string extract();
  std::string cluster_actions();
  std::string profile();
  std::string cluster_players();
  std::string classify();
  std::string predict(const std::optional<std::string>& player = std::nullopt);
  // street: "preflop", "postflop" or "all"; empty path writes
  // <out>/poker_plays[_street].arff.
  std::string export_arff(const std::string& street, const std::string& path);
  // Reads models from `models_dir` (default: the output directory).
  std::string report(const std::optional<std::string>& models_dir = std::nullopt);

  const IngestSummary& last_ingest() const { return ingest_; }

 private:
  std::string path(const std::string& name) const;
  std::string require(const std::string& name) const;

  PipelineConfig config_;
  IngestSummary ingest_;
};

// Centroid table in the published layout: a "Feature" column, then one column
// per cluster headed "Cluster #i P%" (or "Cluster#i P%" for strategy tables),
// numbers at four decimals with trailing zeros trimmed.
std::string centroid_table_csv(const MixtureModel& model, double dual_threshold, bool compact_header);
std::string format_report_number(double v);

// Models built from the published centroid tables.
MixtureModel reference_preflop_model();
MixtureModel reference_postflop_model();
StrategyModel reference_strategy_model();
void write_reference_models(const std::string& dir);

nlohmann::json hand_to_json(const ParsedHand& hand);
ParsedHand hand_from_json(const nlohmann::json& j);
nlohmann::json features_to_json(const ActionFeatures& f);
ActionFeatures features_from_json(const nlohmann::json& j);

std::string sha256_file(const std::string& path);

}  // namespace hhminer

#endif  // HHMINER_PIPELINE_HPP_
