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

// Finite mixture models over mixed numeric/nominal rows.
//
// Each component is a product of independent per-attribute densities: a
// Gaussian for every numeric attribute and a categorical distribution for
// every nominal one. Parameters are fitted by Expectation-Maximization from
// a k-means++ start; the number of components is chosen by cross-validated
// held-out log-likelihood.
//
// Rows are processed in a canonical (lexicographic) order, so the fitted
// parameters do not depend on the order of the input rows.

#ifndef HHMINER_EM_HPP_
#define HHMINER_EM_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hhminer/dataset.hpp"

namespace hhminer {

inline constexpr double kVarianceFloor = 1e-6;
inline constexpr double kProbabilityFloor = 1e-6;
inline constexpr double kDefaultDualThreshold = 0.65;

struct EmConfig {
  std::size_t max_iter = 100;
  // Convergence threshold on the change of the mean per-row log-likelihood.
  double tol = 1e-6;
  double variance_floor = kVarianceFloor;
  double probability_floor = kProbabilityFloor;
};

struct Component {
  double weight = 0.0;
  std::vector<double> mean;      // one per numeric attribute, schema order
  std::vector<double> variance;  // one per numeric attribute
  std::vector<std::vector<double>> probs;  // one vector per nominal attribute

  bool operator==(const Component&) const = default;
};

struct FitLog {
  std::size_t iterations = 0;
  double log_likelihood = 0.0;  // mean per row, final parameters
  std::uint64_t seed = 0;
  std::size_t restarts = 0;
  bool converged = false;
  std::vector<double> trace;  // mean per-row log-likelihood after each E-step
  std::string source = "em";  // "em" or "reference"

  bool operator==(const FitLog&) const = default;
};

class MixtureModel {
 public:
  MixtureModel() = default;
  MixtureModel(std::string relation, Schema schema, std::vector<Component> components);

  std::size_t k() const { return components_.size(); }
  const std::string& relation() const { return relation_; }
  const Schema& schema() const { return schema_; }
  const std::vector<Component>& components() const { return components_; }
  std::vector<Component>& mutable_components() { return components_; }
  const FitLog& fit_log() const { return fit_log_; }
  FitLog& mutable_fit_log() { return fit_log_; }
  const std::vector<std::string>& removed_attributes() const { return removed_; }
  void set_removed_attributes(std::vector<std::string> removed) { removed_ = std::move(removed); }

  // Column of attribute `attr` within the numeric (or nominal) parameter
  // vectors; nullopt when the attribute has the other kind.
  std::optional<std::size_t> numeric_slot(std::size_t attr) const;
  std::optional<std::size_t> nominal_slot(std::size_t attr) const;

  // log(weight_c * p_c(row)) for each component.
  void component_log_densities(std::span<const double> row, std::span<double> out) const;
  // log p(row) under the mixture.
  double log_density(std::span<const double> row) const;

  // Content hash of schema and parameters (16 hex digits).
  std::string id() const;

  // Throws SchemaMismatch unless weights sum to 1, probabilities sum to 1 and
  // shapes agree with the schema.
  void validate() const;

  bool operator==(const MixtureModel&) const = default;

 private:
  void index_schema();

  std::string relation_;
  Schema schema_;
  std::vector<Component> components_;
  FitLog fit_log_;
  std::vector<std::string> removed_;
  std::vector<std::optional<std::size_t>> numeric_slot_;
  std::vector<std::optional<std::size_t>> nominal_slot_;
};

// Throws EmptyDataset, InvalidArgument (k == 0), DegenerateFit.
MixtureModel em_fit(const Dataset& dataset, std::size_t k, std::uint64_t seed, const EmConfig& config = {});

// Posterior component probabilities, one row per dataset row.
std::vector<std::vector<double>> responsibilities(const MixtureModel& model, const Dataset& dataset);
// Mean per-row log-likelihood.
double mean_log_likelihood(const MixtureModel& model, const Dataset& dataset);

struct SelectConfig {
  std::size_t k_max = 12;
  std::size_t folds = 10;
  // A larger k is accepted only if the cross-validated mean per-row
  // log-likelihood rises by more than this.
  double min_improvement = 1e-3;
  EmConfig em;
};

struct Selection {
  std::size_t best_k = 1;
  MixtureModel model;
  std::vector<double> cv_scores;  // index k-1
};

// Throws EmptyDataset, InvalidArgument (fewer rows than folds).
Selection select_k(const Dataset& dataset, std::uint64_t seed, const SelectConfig& config = {});

struct CentroidEntry {
  std::string attribute;
  std::optional<double> mean;  // numeric attributes
  std::string label;           // nominal: modal value or "A/B"
};

struct Centroid {
  double weight = 0.0;
  std::vector<CentroidEntry> entries;  // schema order
};

std::vector<Centroid> centroids(const MixtureModel& model, double dual_threshold = kDefaultDualThreshold);

struct ClusterAssignment {
  std::size_t row = 0;
  std::size_t cluster = 0;
  double distance = 0.0;
};

// Euclidean nearest component: numeric attributes contribute (x - mean)^2,
// each nominal attribute (1 - p_c(value))^2. Ties go to the lowest id.
// Throws SchemaMismatch.
ClusterAssignment assign_nearest(std::span<const double> row, const MixtureModel& model);

// Point with soft nominal values: numeric coordinates plus one probability
// vector per nominal attribute (in model slot order). Nominal attributes
// contribute half the squared Euclidean distance between the distributions,
// which equals (1 - p_c(value))^2 for a one-hot binary value.
struct SoftPoint {
  std::vector<double> numeric;
  std::vector<std::vector<double>> nominal;
};

SoftPoint component_point(const MixtureModel& model, std::size_t cluster);
ClusterAssignment assign_nearest(const SoftPoint& point, const MixtureModel& model);

nlohmann::json model_to_json(const MixtureModel& model);
MixtureModel model_from_json(const nlohmann::json& j);
void save_model(const MixtureModel& model, const std::string& path);
MixtureModel load_model(const std::string& path);

std::string sha256_hex(std::string_view data);

}  // namespace hhminer

#endif  // HHMINER_EM_HPP_
