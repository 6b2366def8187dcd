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
#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "hhminer/em.hpp"
#include "hhminer/error.hpp"

using namespace hhminer;

namespace {

// n rows drawn from equally weighted spherical Gaussians.
Dataset blobs(const std::vector<std::vector<double>>& centers, double sd, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, sd);
  Dataset ds;
  ds.relation = "blobs";
  for (std::size_t j = 0; j < centers[0].size(); ++j) ds.schema.push_back(Attribute::numeric("x" + std::to_string(j)));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = centers[i % centers.size()];
    std::vector<double> row;
    for (double m : c) row.push_back(m + z(rng));
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

// Mixed data: one numeric column and one nominal column per component.
Dataset mixed(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 0.03);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Dataset ds;
  ds.relation = "mixed";
  ds.schema = {Attribute::numeric("x"), Attribute::nominal("c", {"A", "B", "C"})};
  for (std::size_t i = 0; i < n; ++i) {
    const bool first = i % 2 == 0;
    const double x = (first ? 0.25 : 0.75) + z(rng);
    const double label = first ? (u(rng) < 0.9 ? 0 : 1) : (u(rng) < 0.9 ? 2 : 1);
    ds.rows.push_back({x, label});
  }
  return ds;
}

std::vector<double> sorted_means(const MixtureModel& m, std::size_t slot) {
  std::vector<double> out;
  for (const auto& c : m.components()) out.push_back(c.mean[slot]);
  std::sort(out.begin(), out.end());
  return out;
}

void check_trace(const MixtureModel& m) {
  const auto& t = m.fit_log().trace;
  REQUIRE_FALSE(t.empty());
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] >= t[i - 1] - 1e-9);
}

}  // namespace

TEST_CASE("one-dimensional mixture") {
  const Dataset ds = blobs({{0.2}, {0.5}, {0.8}}, 0.04, 2000, 1);
  const Selection sel = select_k(ds, 7);
  CHECK(sel.best_k == 3);
  CHECK(sel.cv_scores.size() >= 3);
  const auto means = sorted_means(sel.model, 0);
  REQUIRE(means.size() == 3);
  CHECK(std::abs(means[0] - 0.2) < 0.05);
  CHECK(std::abs(means[1] - 0.5) < 0.05);
  CHECK(std::abs(means[2] - 0.8) < 0.05);
  check_trace(sel.model);
  double w = 0.0;
  for (const auto& c : sel.model.components()) w += c.weight;
  CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("five-dimensional mixture") {
  const Dataset ds = blobs({{0.1, 0.2, 0.3, 0.4, 0.5}, {0.6, 0.5, 0.9, 0.1, 0.2}}, 0.05, 2000, 2);
  const Selection sel = select_k(ds, 3);
  CHECK(sel.best_k == 2);
  // Match each fitted component to the nearest true center.
  const std::vector<std::vector<double>> truth = {{0.1, 0.2, 0.3, 0.4, 0.5}, {0.6, 0.5, 0.9, 0.1, 0.2}};
  for (const auto& c : sel.model.components()) {
    double best = 1e9;
    for (const auto& t : truth) {
      double d = 0.0;
      for (std::size_t j = 0; j < 5; ++j) d = std::max(d, std::abs(c.mean[j] - t[j]));
      best = std::min(best, d);
    }
    CHECK(best < 0.05);
  }
  check_trace(sel.model);
}

TEST_CASE("every fit has a non-decreasing likelihood trace") {
  const Dataset ds = blobs({{0.2, 0.3}, {0.7, 0.6}, {0.4, 0.9}}, 0.1, 600, 3);
  for (std::size_t k = 1; k <= 6; ++k) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) check_trace(em_fit(ds, k, seed));
  }
  check_trace(em_fit(mixed(400, 4), 2, 1));
}

TEST_CASE("fits are deterministic and independent of row order") {
  Dataset ds = blobs({{0.2, 0.3}, {0.7, 0.6}}, 0.05, 300, 5);
  const MixtureModel a = em_fit(ds, 2, 11);
  CHECK(em_fit(ds, 2, 11) == a);
  std::mt19937_64 rng(1);
  std::shuffle(ds.rows.begin(), ds.rows.end(), rng);
  const MixtureModel b = em_fit(ds, 2, 11);
  CHECK(b.components() == a.components());
  CHECK(b.id() == a.id());
}

TEST_CASE("nominal attributes are fitted") {
  const Dataset ds = mixed(1000, 6);
  const Selection sel = select_k(ds, 2);
  CHECK(sel.best_k == 2);
  for (const auto& c : sel.model.components()) {
    double s = 0.0;
    for (double p : c.probs[0]) {
      CHECK(p > 0.0);
      s += p;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*std::max_element(c.probs[0].begin(), c.probs[0].end()) > 0.8);
  }
  const auto r = responsibilities(sel.model, ds);
  REQUIRE(r.size() == ds.size());
  for (const auto& row : r) {
    double s = 0.0;
    for (double p : row) s += p;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(mean_log_likelihood(sel.model, ds) == doctest::Approx(sel.model.fit_log().log_likelihood).epsilon(1e-9));
}

TEST_CASE("fit errors") {
  Dataset empty;
  empty.schema = {Attribute::numeric("x")};
  CHECK_THROWS_AS(em_fit(empty, 1, 0), Error);
  const Dataset ds = blobs({{0.5}}, 0.1, 10, 1);
  CHECK_THROWS_AS(em_fit(ds, 0, 0), Error);
  try {
    em_fit(ds, 11, 0);
    FAIL("expected DegenerateFit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateFit);
  }
  SelectConfig sc;
  sc.folds = 20;
  CHECK_THROWS_AS(select_k(ds, 0, sc), Error);
}

TEST_CASE("centroids use dual labels for split nominal values") {
  Schema schema = {Attribute::numeric("x"), Attribute::nominal("a", {"Call", "Raise"})};
  Component c0{0.6, {0.1}, {0.01}, {{0.9, 0.1}}};
  Component c1{0.4, {0.7}, {0.01}, {{0.5, 0.5}}};
  const MixtureModel m("t", schema, {c0, c1});
  const auto cs = centroids(m, 0.65);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].entries[0].mean == 0.1);
  CHECK(cs[0].entries[1].label == "Call");
  CHECK(cs[1].entries[1].label == "Call/Raise");
  CHECK(centroids(m, 0.95)[0].entries[1].label == "Call/Raise");
}

TEST_CASE("nearest component by Euclidean distance") {
  Schema schema = {Attribute::numeric("x"), Attribute::nominal("a", {"Call", "Raise"})};
  Component c0{0.5, {0.1}, {0.01}, {{1.0, 0.0}}};
  Component c1{0.5, {0.7}, {0.01}, {{0.0, 1.0}}};
  const MixtureModel m("t", schema, {c0, c1});
  const std::vector<double> row = {0.35, 1.0};
  const auto a = assign_nearest(row, m);
  CHECK(a.cluster == 1);
  CHECK(a.distance == doctest::Approx(std::sqrt(0.35 * 0.35)).epsilon(1e-12));
  const std::vector<double> mid = {0.4, 0.0};
  CHECK(assign_nearest(mid, m).cluster == 0);
  for (std::size_t c = 0; c < 2; ++c) {
    const auto self = assign_nearest(component_point(m, c), m);
    CHECK(self.cluster == c);
    CHECK(self.distance == 0.0);
  }
  const std::vector<double> bad = {0.1};
  CHECK_THROWS_AS(assign_nearest(bad, m), Error);
}

TEST_CASE("model documents round-trip and are checked") {
  const MixtureModel m = em_fit(mixed(300, 9), 2, 4);
  const auto j = model_to_json(m);
  const MixtureModel back = model_from_json(j);
  CHECK(back.components() == m.components());
  CHECK(back.id() == m.id());
  CHECK(m.id().size() == 16);

  auto tampered = j;
  tampered["components"][0]["mean"][0] = 0.123456;
  try {
    model_from_json(tampered);
    FAIL("expected ModelMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kModelMismatch);
  }
  auto broken = j;
  broken["components"][0]["weight"] = 5.0;
  broken.erase("id");
  CHECK_THROWS_AS(model_from_json(broken), Error);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}
