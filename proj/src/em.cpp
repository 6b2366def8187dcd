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

#include "hhminer/em.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hhminer/error.hpp"

namespace hhminer {
namespace {

using Matrix = std::vector<std::vector<double>>;

struct DegenerateComponent {};

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a ^ (b + 0x9E3779B97F4A7C15ull + (a << 6) + (a >> 2));
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

void check_rows(const Dataset& ds) {
  for (const auto& r : ds.rows) {
    if (r.size() != ds.schema.size()) throw Error(ErrorCode::kSchemaMismatch, "row width differs from schema");
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (!ds.schema[j].is_numeric()) {
        if (r[j] < 0 || r[j] >= static_cast<double>(ds.schema[j].values.size()) || r[j] != std::floor(r[j])) {
          throw Error(ErrorCode::kSchemaMismatch, "bad nominal index for " + ds.schema[j].name);
        }
      } else if (!std::isfinite(r[j])) {
        throw Error(ErrorCode::kSchemaMismatch, "non-finite value for " + ds.schema[j].name);
      }
    }
  }
}

std::vector<std::size_t> canonical_order(const std::vector<std::vector<double>>& rows) {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rows[a] < rows[b]; });
  return order;
}

double log_sum_exp(std::span<const double> v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

// Per-component constants for fast log-density evaluation.
class Scorer {
 public:
  explicit Scorer(const MixtureModel& model) : k_(model.k()) {
    static const double kLog2Pi = std::log(2.0 * std::numbers::pi);
    const auto& schema = model.schema();
    for (std::size_t j = 0; j < schema.size(); ++j) {
      (schema[j].is_numeric() ? numeric_ : nominal_).push_back(j);
    }
    for (const auto& comp : model.components()) {
      base_.push_back(std::log(comp.weight));
      for (std::size_t s = 0; s < numeric_.size(); ++s) {
        mean_.push_back(comp.mean[s]);
        half_inv_var_.push_back(0.5 / comp.variance[s]);
        base_.back() += -0.5 * (kLog2Pi + std::log(comp.variance[s]));
      }
      std::vector<std::vector<double>> lp;
      for (const auto& p : comp.probs) {
        std::vector<double> l(p.size());
        for (std::size_t v = 0; v < p.size(); ++v) l[v] = std::log(p[v]);
        lp.push_back(std::move(l));
      }
      log_probs_.push_back(std::move(lp));
    }
  }

  void operator()(std::span<const double> row, std::span<double> out) const {
    const std::size_t m = numeric_.size();
    for (std::size_t c = 0; c < k_; ++c) {
      double lp = base_[c];
      const double* mu = &mean_[c * m];
      const double* h = &half_inv_var_[c * m];
      for (std::size_t s = 0; s < m; ++s) {
        const double d = row[numeric_[s]] - mu[s];
        lp -= d * d * h[s];
      }
      for (std::size_t s = 0; s < nominal_.size(); ++s) {
        lp += log_probs_[c][s][static_cast<std::size_t>(row[nominal_[s]])];
      }
      out[c] = lp;
    }
  }

 private:
  std::size_t k_;
  std::vector<std::size_t> numeric_, nominal_;
  std::vector<double> base_, mean_, half_inv_var_;
  std::vector<std::vector<std::vector<double>>> log_probs_;
};

// Maximizes sum_v counts[v] * log p_v over the simplex with p_v >= floor.
std::vector<double> floored_categorical(std::span<const double> counts, double floor) {
  const std::size_t m = counts.size();
  std::vector<double> p(m, 0.0);
  std::vector<bool> fixed(m, false);
  while (true) {
    std::size_t n_fixed = 0;
    double free_counts = 0.0;
    for (std::size_t v = 0; v < m; ++v) {
      if (fixed[v]) {
        ++n_fixed;
      } else {
        free_counts += counts[v];
      }
    }
    const double free_mass = 1.0 - static_cast<double>(n_fixed) * floor;
    bool changed = false;
    for (std::size_t v = 0; v < m; ++v) {
      if (fixed[v]) {
        p[v] = floor;
        continue;
      }
      p[v] = free_counts > 0 ? free_mass * counts[v] / free_counts
                             : free_mass / static_cast<double>(m - n_fixed);
      if (p[v] < floor) {
        fixed[v] = true;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return p;
}

class EmRunner {
 public:
  EmRunner(const Schema& schema, const std::vector<const std::vector<double>*>& rows, const EmConfig& cfg)
      : schema_(schema), rows_(rows), cfg_(cfg) {
    for (std::size_t j = 0; j < schema.size(); ++j) {
      (schema[j].is_numeric() ? numeric_ : nominal_).push_back(j);
    }
  }

  MixtureModel run(const std::string& relation, std::size_t k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto comps = initialize(k, rng);
    MixtureModel model(relation, schema_, comps);
    FitLog log;
    log.seed = seed;
    Matrix resp;
    double ll = e_step(model, resp);
    log.trace.push_back(ll);
    std::size_t it = 0;
    while (it < cfg_.max_iter) {
      ++it;
      model.mutable_components() = m_step(resp, k);
      double next = e_step(model, resp);
      log.trace.push_back(next);
      const double delta = next - ll;
      ll = next;
      if (std::abs(delta) < cfg_.tol) {
        log.converged = true;
        break;
      }
    }
    log.iterations = it;
    log.log_likelihood = ll;
    model.mutable_fit_log() = std::move(log);
    return model;
  }

 private:
  // Row as a point for k-means: numeric values followed by one-hot nominals.
  std::vector<double> embed(const std::vector<double>& row) const {
    std::vector<double> x;
    for (std::size_t j : numeric_) x.push_back(row[j]);
    for (std::size_t j : nominal_) {
      for (std::size_t v = 0; v < schema_[j].values.size(); ++v) x.push_back(static_cast<double>(v) == row[j] ? 1.0 : 0.0);
    }
    return x;
  }

  static double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
    return d;
  }

  // Greedy k-means++ seeding followed by Lloyd iterations; returns the
  // cluster of every row.
  std::vector<std::size_t> kmeans(const std::vector<std::vector<double>>& pts, std::size_t k,
                                  std::mt19937_64& rng) const {
    const std::size_t n = pts.size();
    const std::size_t trials = 2 + static_cast<std::size_t>(std::log(static_cast<double>(k)));
    std::vector<std::vector<double>> centers;
    std::uniform_int_distribution<std::size_t> any(0, n - 1);
    centers.push_back(pts[any(rng)]);
    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(pts[i], centers[0]);
    while (centers.size() < k) {
      const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
      std::size_t best = 0;
      double best_pot = std::numeric_limits<double>::infinity();
      std::vector<double> best_d2;
      for (std::size_t t = 0; t < trials; ++t) {
        std::size_t pick = any(rng);
        if (total > 0.0) {
          double target = std::uniform_real_distribution<double>(0.0, total)(rng);
          pick = n - 1;
          for (std::size_t i = 0; i < n; ++i) {
            target -= d2[i];
            if (target < 0.0 && d2[i] > 0.0) {
              pick = i;
              break;
            }
          }
        }
        std::vector<double> nd2(n);
        double pot = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          nd2[i] = std::min(d2[i], sq_dist(pts[i], pts[pick]));
          pot += nd2[i];
        }
        if (pot < best_pot) {
          best_pot = pot;
          best = pick;
          best_d2 = std::move(nd2);
        }
      }
      centers.push_back(pts[best]);
      d2 = std::move(best_d2);
    }

    std::vector<std::size_t> label(n, 0);
    for (std::size_t iter = 0; iter < 50; ++iter) {
      bool changed = iter == 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t arg = 0;
        double dmin = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
          const double d = sq_dist(pts[i], centers[c]);
          if (d < dmin) {
            dmin = d;
            arg = c;
          }
        }
        if (label[i] != arg) changed = true;
        label[i] = arg;
      }
      if (!changed) break;
      std::vector<std::vector<double>> sum(k, std::vector<double>(pts[0].size(), 0.0));
      std::vector<std::size_t> count(k, 0);
      for (std::size_t i = 0; i < n; ++i) {
        ++count[label[i]];
        for (std::size_t q = 0; q < pts[i].size(); ++q) sum[label[i]][q] += pts[i][q];
      }
      for (std::size_t c = 0; c < k; ++c) {
        if (count[c] == 0) continue;
        for (auto& v : sum[c]) v /= static_cast<double>(count[c]);
        centers[c] = std::move(sum[c]);
      }
    }
    return label;
  }

  std::vector<Component> initialize(std::size_t k, std::mt19937_64& rng) {
    const std::size_t n = rows_.size();
    std::vector<std::vector<double>> pts;
    pts.reserve(n);
    for (const auto* r : rows_) pts.push_back(embed(*r));
    const auto label = kmeans(pts, k, rng);

    auto variance_of = [&](std::size_t j, auto&& member) {
      double m = 0.0, cnt = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (member(i)) {
          m += (*rows_[i])[j];
          cnt += 1.0;
        }
      }
      m /= cnt;
      double v = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (member(i)) v += ((*rows_[i])[j] - m) * ((*rows_[i])[j] - m);
      }
      return std::pair{m, std::max(v / cnt, cfg_.variance_floor)};
    };

    std::vector<Component> comps(k);
    for (std::size_t c = 0; c < k; ++c) {
      auto in_c = [&](std::size_t i) { return label[i] == c; };
      const auto size = static_cast<std::size_t>(std::count(label.begin(), label.end(), c));
      auto& comp = comps[c];
      comp.weight = (static_cast<double>(size) + 1.0) / static_cast<double>(n + k);
      for (std::size_t j : numeric_) {
        auto [m, v] = size >= 2 ? variance_of(j, in_c) : variance_of(j, [](std::size_t) { return true; });
        if (size == 1) {
          m = (*rows_[static_cast<std::size_t>(std::find(label.begin(), label.end(), c) - label.begin())])[j];
        }
        comp.mean.push_back(m);
        comp.variance.push_back(v);
      }
      for (std::size_t j : nominal_) {
        std::vector<double> counts(schema_[j].values.size(), 1.0);
        for (std::size_t i = 0; i < n; ++i) {
          if (in_c(i)) counts[static_cast<std::size_t>((*rows_[i])[j])] += 1.0;
        }
        comp.probs.push_back(floored_categorical(counts, cfg_.probability_floor));
      }
    }
    return comps;
  }

  double e_step(const MixtureModel& model, Matrix& resp) const {
    const std::size_t n = rows_.size();
    const std::size_t k = model.k();
    resp.assign(n, std::vector<double>(k, 0.0));
    std::vector<double> lp(k);
    const Scorer score(model);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      score(*rows_[i], lp);
      const double lse = log_sum_exp(lp);
      total += lse;
      for (std::size_t c = 0; c < k; ++c) resp[i][c] = std::exp(lp[c] - lse);
    }
    return total / static_cast<double>(n);
  }

  std::vector<Component> m_step(const Matrix& resp, std::size_t k) const {
    const std::size_t n = rows_.size();
    std::vector<Component> comps(k);
    for (std::size_t c = 0; c < k; ++c) {
      double nc = 0.0;
      for (std::size_t i = 0; i < n; ++i) nc += resp[i][c];
      // Weight below 1/(2n).
      if (nc < 0.5) throw DegenerateComponent{};
      auto& comp = comps[c];
      comp.weight = nc / static_cast<double>(n);
      for (std::size_t j : numeric_) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m += resp[i][c] * (*rows_[i])[j];
        m /= nc;
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double d = (*rows_[i])[j] - m;
          v += resp[i][c] * d * d;
        }
        comp.mean.push_back(m);
        comp.variance.push_back(std::max(v / nc, cfg_.variance_floor));
      }
      for (std::size_t j : nominal_) {
        std::vector<double> counts(schema_[j].values.size(), 0.0);
        for (std::size_t i = 0; i < n; ++i) counts[static_cast<std::size_t>((*rows_[i])[j])] += resp[i][c];
        comp.probs.push_back(floored_categorical(counts, cfg_.probability_floor));
      }
    }
    return comps;
  }

  const Schema& schema_;
  const std::vector<const std::vector<double>*>& rows_;
  EmConfig cfg_;
  std::vector<std::size_t> numeric_;
  std::vector<std::size_t> nominal_;
};

std::string format_centroid_label(const Attribute& a, const std::vector<double>& p, double threshold) {
  std::size_t best = 0;
  for (std::size_t v = 1; v < p.size(); ++v) {
    if (p[v] > p[best]) best = v;
  }
  if (p[best] >= threshold || p.size() < 2) return a.values[best];
  std::size_t second = best == 0 ? 1 : 0;
  for (std::size_t v = 0; v < p.size(); ++v) {
    if (v != best && p[v] > p[second]) second = v;
  }
  auto [lo, hi] = std::minmax(best, second);
  return a.values[lo] + "/" + a.values[hi];
}

}  // namespace

MixtureModel::MixtureModel(std::string relation, Schema schema, std::vector<Component> components)
    : relation_(std::move(relation)), schema_(std::move(schema)), components_(std::move(components)) {
  index_schema();
}

void MixtureModel::index_schema() {
  numeric_slot_.assign(schema_.size(), std::nullopt);
  nominal_slot_.assign(schema_.size(), std::nullopt);
  std::size_t nu = 0, no = 0;
  for (std::size_t j = 0; j < schema_.size(); ++j) {
    if (schema_[j].is_numeric()) {
      numeric_slot_[j] = nu++;
    } else {
      nominal_slot_[j] = no++;
    }
  }
}

std::optional<std::size_t> MixtureModel::numeric_slot(std::size_t attr) const { return numeric_slot_.at(attr); }
std::optional<std::size_t> MixtureModel::nominal_slot(std::size_t attr) const { return nominal_slot_.at(attr); }

void MixtureModel::component_log_densities(std::span<const double> row, std::span<double> out) const {
  Scorer(*this)(row, out);
}

double MixtureModel::log_density(std::span<const double> row) const {
  std::vector<double> lp(k());
  component_log_densities(row, lp);
  return log_sum_exp(lp);
}

void MixtureModel::validate() const {
  if (components_.empty()) throw Error(ErrorCode::kSchemaMismatch, "model has no components");
  std::size_t n_num = 0, n_nom = 0;
  for (const auto& a : schema_) (a.is_numeric() ? n_num : n_nom)++;
  double wsum = 0.0;
  for (const auto& c : components_) {
    wsum += c.weight;
    if (c.mean.size() != n_num || c.variance.size() != n_num || c.probs.size() != n_nom) {
      throw Error(ErrorCode::kSchemaMismatch, "component shape differs from schema");
    }
    for (double v : c.variance) {
      if (!(v > 0)) throw Error(ErrorCode::kSchemaMismatch, "non-positive variance");
    }
    std::size_t slot = 0;
    for (const auto& a : schema_) {
      if (a.is_numeric()) continue;
      const auto& p = c.probs[slot++];
      if (p.size() != a.values.size()) throw Error(ErrorCode::kSchemaMismatch, "probability vector size");
      double s = std::accumulate(p.begin(), p.end(), 0.0);
      if (std::abs(s - 1.0) > 1e-9) throw Error(ErrorCode::kSchemaMismatch, "probabilities do not sum to 1");
    }
  }
  if (std::abs(wsum - 1.0) > 1e-9) throw Error(ErrorCode::kSchemaMismatch, "weights do not sum to 1");
}

MixtureModel em_fit(const Dataset& dataset, std::size_t k, std::uint64_t seed, const EmConfig& config) {
  if (dataset.empty()) throw Error(ErrorCode::kEmptyDataset, "cannot fit an empty dataset");
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (dataset.schema.empty()) throw Error(ErrorCode::kSchemaMismatch, "dataset has no attributes");
  check_rows(dataset);
  if (k > dataset.size()) {
    throw Error(ErrorCode::kDegenerateFit, "k=" + std::to_string(k) + " exceeds " +
                                               std::to_string(dataset.size()) + " rows");
  }
  std::vector<const std::vector<double>*> rows;
  for (auto i : canonical_order(dataset.rows)) rows.push_back(&dataset.rows[i]);
  EmRunner runner(dataset.schema, rows, config);
  std::uint64_t s = seed;
  for (std::size_t attempt = 0; attempt < 2; ++attempt) {
    try {
      MixtureModel model = runner.run(dataset.relation, k, s);
      model.mutable_fit_log().seed = seed;
      model.mutable_fit_log().restarts = attempt;
      return model;
    } catch (const DegenerateComponent&) {
      s = mix_seed(seed, attempt + 1);
    }
  }
  throw Error(ErrorCode::kDegenerateFit, "a component collapsed twice with k=" + std::to_string(k));
}

std::vector<std::vector<double>> responsibilities(const MixtureModel& model, const Dataset& dataset) {
  std::vector<std::vector<double>> out;
  out.reserve(dataset.size());
  std::vector<double> lp(model.k());
  const Scorer score(model);
  for (const auto& r : dataset.rows) {
    if (r.size() != model.schema().size()) throw Error(ErrorCode::kSchemaMismatch, "row width differs");
    score(r, lp);
    const double lse = log_sum_exp(lp);
    std::vector<double> p(model.k());
    for (std::size_t c = 0; c < p.size(); ++c) p[c] = std::exp(lp[c] - lse);
    out.push_back(std::move(p));
  }
  return out;
}

double mean_log_likelihood(const MixtureModel& model, const Dataset& dataset) {
  if (dataset.empty()) throw Error(ErrorCode::kEmptyDataset, "no rows to score");
  const Scorer score(model);
  std::vector<double> lp(model.k());
  double total = 0.0;
  for (const auto& r : dataset.rows) {
    if (r.size() != model.schema().size()) throw Error(ErrorCode::kSchemaMismatch, "row width differs");
    score(r, lp);
    total += log_sum_exp(lp);
  }
  return total / static_cast<double>(dataset.size());
}

Selection select_k(const Dataset& dataset, std::uint64_t seed, const SelectConfig& config) {
  if (dataset.empty()) throw Error(ErrorCode::kEmptyDataset, "cannot select k on an empty dataset");
  if (config.folds < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 folds");
  if (dataset.size() < config.folds) {
    throw Error(ErrorCode::kInvalidArgument, "fewer rows than folds");
  }
  if (config.k_max < 1) throw Error(ErrorCode::kInvalidArgument, "k_max must be >= 1");
  check_rows(dataset);

  auto order = canonical_order(dataset.rows);
  std::vector<std::size_t> perm(order.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::size_t> fold_of(order.size());
  for (std::size_t p = 0; p < perm.size(); ++p) fold_of[perm[p]] = p % config.folds;

  std::vector<Dataset> train(config.folds), test(config.folds);
  for (std::size_t f = 0; f < config.folds; ++f) {
    train[f].relation = test[f].relation = dataset.relation;
    train[f].schema = test[f].schema = dataset.schema;
  }
  for (std::size_t p = 0; p < order.size(); ++p) {
    const auto& row = dataset.rows[order[p]];
    for (std::size_t f = 0; f < config.folds; ++f) {
      (fold_of[p] == f ? test[f] : train[f]).rows.push_back(row);
    }
  }

  Selection sel;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= config.k_max; ++k) {
    double score = 0.0;
    bool ok = true;
    for (std::size_t f = 0; f < config.folds && ok; ++f) {
      try {
        auto m = em_fit(train[f], k, mix_seed(seed, k * 1000 + f), config.em);
        score += mean_log_likelihood(m, test[f]);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDegenerateFit) throw;
        ok = false;
      }
    }
    if (!ok) break;
    score /= static_cast<double>(config.folds);
    sel.cv_scores.push_back(score);
    if (k > 1 && !(score > best_score + config.min_improvement)) break;
    sel.best_k = k;
    best_score = score;
  }
  sel.model = em_fit(dataset, sel.best_k, mix_seed(seed, sel.best_k * 1000 + config.folds), config.em);
  return sel;
}

std::vector<Centroid> centroids(const MixtureModel& model, double dual_threshold) {
  std::vector<Centroid> out;
  const auto& schema = model.schema();
  for (const auto& comp : model.components()) {
    Centroid c;
    c.weight = comp.weight;
    for (std::size_t j = 0; j < schema.size(); ++j) {
      CentroidEntry e;
      e.attribute = schema[j].name;
      if (auto s = model.numeric_slot(j)) {
        e.mean = comp.mean[*s];
      } else {
        e.label = format_centroid_label(schema[j], comp.probs[*model.nominal_slot(j)], dual_threshold);
      }
      c.entries.push_back(std::move(e));
    }
    out.push_back(std::move(c));
  }
  return out;
}

ClusterAssignment assign_nearest(std::span<const double> row, const MixtureModel& model) {
  const auto& schema = model.schema();
  if (row.size() != schema.size()) {
    throw Error(ErrorCode::kSchemaMismatch, "row has " + std::to_string(row.size()) + " values, model expects " +
                                                std::to_string(schema.size()));
  }
  for (std::size_t j = 0; j < schema.size(); ++j) {
    if (!schema[j].is_numeric() &&
        (row[j] < 0 || row[j] >= static_cast<double>(schema[j].values.size()) || row[j] != std::floor(row[j]))) {
      throw Error(ErrorCode::kSchemaMismatch, "bad nominal index for " + schema[j].name);
    }
  }
  ClusterAssignment best;
  best.distance = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < model.k(); ++c) {
    const auto& comp = model.components()[c];
    double d2 = 0.0;
    for (std::size_t j = 0; j < schema.size(); ++j) {
      if (auto s = model.numeric_slot(j)) {
        const double d = row[j] - comp.mean[*s];
        d2 += d * d;
      } else {
        const double miss = 1.0 - comp.probs[*model.nominal_slot(j)][static_cast<std::size_t>(row[j])];
        d2 += miss * miss;
      }
    }
    const double d = std::sqrt(d2);
    if (d < best.distance) {
      best.distance = d;
      best.cluster = c;
    }
  }
  return best;
}

SoftPoint component_point(const MixtureModel& model, std::size_t cluster) {
  const auto& comp = model.components().at(cluster);
  return SoftPoint{comp.mean, comp.probs};
}

ClusterAssignment assign_nearest(const SoftPoint& point, const MixtureModel& model) {
  ClusterAssignment best;
  best.distance = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < model.k(); ++c) {
    const auto& comp = model.components()[c];
    if (point.numeric.size() != comp.mean.size() || point.nominal.size() != comp.probs.size()) {
      throw Error(ErrorCode::kSchemaMismatch, "point shape differs from model");
    }
    double d2 = 0.0;
    for (std::size_t s = 0; s < comp.mean.size(); ++s) {
      const double d = point.numeric[s] - comp.mean[s];
      d2 += d * d;
    }
    for (std::size_t s = 0; s < comp.probs.size(); ++s) {
      if (point.nominal[s].size() != comp.probs[s].size()) throw Error(ErrorCode::kSchemaMismatch, "nominal size");
      double h = 0.0;
      for (std::size_t v = 0; v < comp.probs[s].size(); ++v) {
        const double d = point.nominal[s][v] - comp.probs[s][v];
        h += d * d;
      }
      d2 += 0.5 * h;
    }
    const double d = std::sqrt(d2);
    if (d < best.distance) {
      best.distance = d;
      best.cluster = c;
    }
  }
  return best;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIo, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

namespace {

nlohmann::json schema_to_json(const Schema& schema) {
  auto arr = nlohmann::json::array();
  for (const auto& a : schema) {
    nlohmann::json j = {{"name", a.name}, {"kind", a.is_numeric() ? "numeric" : "nominal"}};
    if (!a.is_numeric()) j["values"] = a.values;
    arr.push_back(std::move(j));
  }
  return arr;
}

nlohmann::json params_json(const MixtureModel& model) {
  auto comps = nlohmann::json::array();
  for (const auto& c : model.components()) {
    comps.push_back({{"weight", c.weight}, {"mean", c.mean}, {"variance", c.variance}, {"probs", c.probs}});
  }
  return {{"relation", model.relation()},
          {"schema", schema_to_json(model.schema())},
          {"removed_attributes", model.removed_attributes()},
          {"components", std::move(comps)}};
}

}  // namespace

std::string MixtureModel::id() const { return sha256_hex(params_json(*this).dump()).substr(0, 16); }

nlohmann::json model_to_json(const MixtureModel& model) {
  nlohmann::json j = params_json(model);
  j["format"] = "hhminer.mixture/1";
  j["id"] = model.id();
  j["k"] = model.k();
  const auto& log = model.fit_log();
  j["fit_log"] = {{"iterations", log.iterations}, {"log_likelihood", log.log_likelihood},
                  {"seed", log.seed},             {"restarts", log.restarts},
                  {"converged", log.converged},   {"trace", log.trace},
                  {"source", log.source}};
  return j;
}

MixtureModel model_from_json(const nlohmann::json& j) {
  try {
    Schema schema;
    for (const auto& a : j.at("schema")) {
      if (a.at("kind") == "numeric") {
        schema.push_back(Attribute::numeric(a.at("name")));
      } else {
        schema.push_back(Attribute::nominal(a.at("name"), a.at("values").get<std::vector<std::string>>()));
      }
    }
    std::vector<Component> comps;
    for (const auto& c : j.at("components")) {
      Component comp;
      comp.weight = c.at("weight");
      comp.mean = c.at("mean").get<std::vector<double>>();
      comp.variance = c.at("variance").get<std::vector<double>>();
      comp.probs = c.at("probs").get<std::vector<std::vector<double>>>();
      comps.push_back(std::move(comp));
    }
    MixtureModel model(j.at("relation"), std::move(schema), std::move(comps));
    if (j.contains("removed_attributes")) {
      model.set_removed_attributes(j.at("removed_attributes").get<std::vector<std::string>>());
    }
    if (j.contains("fit_log")) {
      const auto& l = j.at("fit_log");
      auto& log = model.mutable_fit_log();
      log.iterations = l.value("iterations", std::size_t{0});
      log.log_likelihood = l.value("log_likelihood", 0.0);
      log.seed = l.value("seed", std::uint64_t{0});
      log.restarts = l.value("restarts", std::size_t{0});
      log.converged = l.value("converged", false);
      log.trace = l.value("trace", std::vector<double>{});
      log.source = l.value("source", std::string("em"));
    }
    model.validate();
    if (j.contains("id") && j.at("id").get<std::string>() != model.id()) {
      throw Error(ErrorCode::kModelMismatch, "stored model id does not match its parameters");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaMismatch, std::string("bad model document: ") + e.what());
  }
}

void save_model(const MixtureModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << model_to_json(model).dump(2) << '\n';
}

MixtureModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaMismatch, path + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace hhminer
