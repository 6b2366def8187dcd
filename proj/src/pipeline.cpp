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

#include "hhminer/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hhminer/error.hpp"
#include "hhminer/game.hpp"

namespace hhminer {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr char kHands[] = "hands.jsonl";
constexpr char kRows[] = "rows.jsonl";
constexpr char kTallies[] = "tallies.json";
constexpr char kPreModel[] = "action_model_preflop.json";
constexpr char kPostModel[] = "action_model_postflop.json";
constexpr char kProfiles[] = "profiles.json";
constexpr char kStrategy[] = "strategy_model.json";
constexpr char kClassification[] = "classification.csv";

std::uint64_t stage_seed(std::uint64_t base, std::uint64_t tag) {
  std::uint64_t x = base + 0x9E3779B97F4A7C15ull * (tag + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const std::string v = trim(value);
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw Error(ErrorCode::kInvalidConfig, key + ": '" + value + "' is not a valid number");
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchemaMismatch, path + ": " + e.what());
  }
}

template <typename F>
void for_each_jsonl(const std::string& path, F&& f) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (trim(line).empty()) continue;
    try {
      f(json::parse(line));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kSchemaMismatch, path + ":" + std::to_string(n) + ": " + e.what());
    }
  }
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

Street street_from_name(const std::string& s) {
  for (Street st : {Street::kPreFlop, Street::kFlop, Street::kTurn, Street::kRiver}) {
    if (street_name(st) == s) return st;
  }
  throw Error(ErrorCode::kSchemaMismatch, "unknown street '" + s + "'");
}

EventKind event_kind_from_name(const std::string& s) {
  for (int k = 0; k <= static_cast<int>(EventKind::kShowdownMarker); ++k) {
    if (event_kind_name(static_cast<EventKind>(k)) == s) return static_cast<EventKind>(k);
  }
  throw Error(ErrorCode::kSchemaMismatch, "unknown event kind '" + s + "'");
}

ActionKind action_kind_from_name(const std::string& s) {
  for (int k = 0; k <= static_cast<int>(ActionKind::kAllIn); ++k) {
    if (action_kind_name(static_cast<ActionKind>(k)) == s) return static_cast<ActionKind>(k);
  }
  throw Error(ErrorCode::kSchemaMismatch, "unknown action kind '" + s + "'");
}

std::vector<ActionFeatures> read_rows(const std::string& path) {
  std::vector<ActionFeatures> rows;
  for_each_jsonl(path, [&](const json& j) { rows.push_back(features_from_json(j)); });
  return rows;
}

TallyMap read_tallies(const std::string& path) {
  TallyMap out;
  const json j = read_json(path);
  try {
    for (const auto& [id, t] : j.items()) {
      out[id] = {t.at("decisions"), t.at("folds"),  t.at("checks"), t.at("calls"),
                 t.at("bets"),      t.at("raises"), t.at("allins")};
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchemaMismatch, path + ": " + e.what());
  }
  return out;
}

struct ProfileFile {
  std::string pre_model;
  std::string post_model;
  std::vector<PlayerProfile> profiles;
};

ProfileFile read_profiles(const std::string& path) {
  const json j = read_json(path);
  ProfileFile out;
  try {
    out.pre_model = j.at("pre_action_model");
    out.post_model = j.at("post_action_model");
    for (const auto& p : j.at("profiles")) out.profiles.push_back(profile_from_json(p));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchemaMismatch, path + ": " + e.what());
  }
  return out;
}

// Records what a stage read, wrote and counted.
class Manifest {
 public:
  Manifest(std::string command, const PipelineConfig& config)
      : command_(std::move(command)), config_(config.to_json()), started_(utc_now()) {}

  void input(const std::string& path) { inputs_.push_back({{"path", path}, {"sha256", sha256_file(path)}}); }
  void output(const std::string& path) { outputs_.push_back({{"path", path}, {"sha256", sha256_file(path)}}); }
  json& counts() { return counts_; }
  json& models() { return models_; }

  void write(const std::string& dir) const {
    json j = {{"command", command_},
              {"config", config_},
              {"inputs", inputs_},
              {"outputs", outputs_},
              {"counts", counts_},
              {"models", models_},
              {"started_at", started_},
              {"finished_at", utc_now()}};
    write_file((fs::path(dir) / ("manifest_" + command_ + ".json")).string(), j.dump(2) + "\n");
  }

 private:
  std::string command_;
  json config_;
  std::string started_;
  json inputs_ = json::array();
  json outputs_ = json::array();
  json counts_ = json::object();
  json models_ = json::object();
};

void check_model_ids(const std::string& want_pre, const std::string& want_post, const MixtureModel& pre,
                     const MixtureModel& post, const std::string& what) {
  if (want_pre != pre.id() || want_post != post.id()) {
    throw Error(ErrorCode::kModelMismatch, what + " was built against action models " + want_pre + "/" + want_post +
                                               ", current models are " + pre.id() + "/" + post.id());
  }
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string csv_optional(const std::optional<double>& v) { return v ? fmt("%.6f", *v) : std::string(); }

}  // namespace

// ---------------------------------------------------------------------------
// Configuration.

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> kKeys = {
      "seed",          "equity.preflop_samples", "equity.lookahead_cap", "filter.min_variance",
      "filter.max_dominance", "em.tol",           "em.max_iter",          "em.folds",
      "em.k_max",      "em.min_improvement",     "em.dual_threshold",    "em.action_min_stddev",
      "em.strategy_min_stddev", "profile.min_actions", "out"};
  return kKeys;
}

void PipelineConfig::set(const std::string& key, const std::string& value) {
  if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "equity.preflop_samples") {
    equity.preflop_samples = parse_number<int>(key, value);
  } else if (key == "equity.lookahead_cap") {
    equity.lookahead_cap = parse_number<std::size_t>(key, value);
  } else if (key == "filter.min_variance") {
    min_variance = parse_number<double>(key, value);
  } else if (key == "filter.max_dominance") {
    max_dominance = parse_number<double>(key, value);
  } else if (key == "em.tol") {
    em_tol = parse_number<double>(key, value);
  } else if (key == "em.max_iter") {
    em_max_iter = parse_number<std::size_t>(key, value);
  } else if (key == "em.folds") {
    em_folds = parse_number<std::size_t>(key, value);
  } else if (key == "em.k_max") {
    em_k_max = parse_number<std::size_t>(key, value);
  } else if (key == "em.min_improvement") {
    em_min_improvement = parse_number<double>(key, value);
  } else if (key == "em.dual_threshold") {
    dual_threshold = parse_number<double>(key, value);
  } else if (key == "em.action_min_stddev") {
    action_min_stddev = parse_number<double>(key, value);
  } else if (key == "em.strategy_min_stddev") {
    strategy_min_stddev = parse_number<double>(key, value);
  } else if (key == "profile.min_actions") {
    min_actions = parse_number<std::size_t>(key, value);
  } else if (key == "out") {
    out = trim(value);
  } else {
    throw Error(ErrorCode::kInvalidConfig, "unknown key '" + key + "'");
  }
}

void PipelineConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config " + path);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidConfig, path + ":" + std::to_string(n) + ": expected key = value");
    }
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void PipelineConfig::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::kInvalidConfig, what); };
  if (equity.preflop_samples < 1) bad("equity.preflop_samples must be >= 1");
  if (equity.lookahead_cap < 1) bad("equity.lookahead_cap must be >= 1");
  if (!(min_variance >= 0)) bad("filter.min_variance must be >= 0");
  if (!(max_dominance > 0 && max_dominance <= 1)) bad("filter.max_dominance must be in (0, 1]");
  if (!(em_tol > 0)) bad("em.tol must be > 0");
  if (em_max_iter < 1) bad("em.max_iter must be >= 1");
  if (em_folds < 2) bad("em.folds must be >= 2");
  if (em_k_max < 1) bad("em.k_max must be >= 1");
  if (!(em_min_improvement >= 0)) bad("em.min_improvement must be >= 0");
  if (!(dual_threshold > 0.5 && dual_threshold <= 1)) bad("em.dual_threshold must be in (0.5, 1]");
  if (!(action_min_stddev > 0) || !(strategy_min_stddev > 0)) bad("minimum standard deviations must be > 0");
  if (min_actions < 1) bad("profile.min_actions must be >= 1");
  if (out.empty()) bad("out must not be empty");
}

SelectConfig PipelineConfig::action_select() const {
  SelectConfig sc;
  sc.k_max = em_k_max;
  sc.folds = em_folds;
  sc.min_improvement = em_min_improvement;
  sc.em.tol = em_tol;
  sc.em.max_iter = em_max_iter;
  sc.em.variance_floor = action_min_stddev * action_min_stddev;
  return sc;
}

StrategyFitConfig PipelineConfig::strategy_fit() const {
  StrategyFitConfig sf;
  sf.select = action_select();
  sf.select.em.variance_floor = strategy_min_stddev * strategy_min_stddev;
  sf.min_variance = min_variance;
  sf.max_dominance = max_dominance;
  return sf;
}

json PipelineConfig::to_json() const {
  return {{"seed", seed},
          {"equity.preflop_samples", equity.preflop_samples},
          {"equity.lookahead_cap", equity.lookahead_cap},
          {"filter.min_variance", min_variance},
          {"filter.max_dominance", max_dominance},
          {"em.tol", em_tol},
          {"em.max_iter", em_max_iter},
          {"em.folds", em_folds},
          {"em.k_max", em_k_max},
          {"em.min_improvement", em_min_improvement},
          {"em.dual_threshold", dual_threshold},
          {"em.action_min_stddev", action_min_stddev},
          {"em.strategy_min_stddev", strategy_min_stddev},
          {"profile.min_actions", min_actions},
          {"out", out}};
}

// ---------------------------------------------------------------------------
// Serialization.

json hand_to_json(const ParsedHand& h) {
  json seats = json::array();
  for (const auto& s : h.seats) {
    seats.push_back({{"seat", s.seat_index}, {"player", s.player_id}, {"stack", s.starting_stack}});
  }
  json events = json::array();
  for (const auto& e : h.events) {
    json ev = {{"kind", event_kind_name(e.kind)}, {"street", street_name(e.street)}};
    if (e.actor) ev["actor"] = *e.actor;
    if (e.amount != 0) ev["amount"] = e.amount;
    if (e.raise_to) ev["raise_to"] = *e.raise_to;
    if (!e.cards.empty()) ev["cards"] = to_string(e.cards);
    events.push_back(std::move(ev));
  }
  json showdown = json::array();
  for (const auto& r : h.showdown) {
    showdown.push_back({{"player", r.player_id}, {"cards", r.hole_cards ? json(to_string(*r.hole_cards)) : json()}});
  }
  return {{"stage_id", h.stage_id},     {"variant", h.variant}, {"stakes", h.stakes},
          {"table", h.table_name},      {"dealer_seat", h.dealer_seat}, {"seats", seats},
          {"events", events},           {"showdown", showdown}, {"pot_total", h.pot_total}};
}

ParsedHand hand_from_json(const json& j) {
  ParsedHand h;
  h.stage_id = j.at("stage_id");
  h.variant = j.at("variant");
  h.stakes = j.at("stakes");
  h.table_name = j.at("table");
  h.dealer_seat = j.at("dealer_seat");
  for (const auto& s : j.at("seats")) h.seats.push_back({s.at("seat"), s.at("player"), s.at("stack")});
  for (const auto& e : j.at("events")) {
    LogEvent ev;
    ev.kind = event_kind_from_name(e.at("kind"));
    ev.street = street_from_name(e.at("street"));
    if (e.contains("actor")) ev.actor = e.at("actor").get<std::string>();
    ev.amount = e.value("amount", Chips{0});
    if (e.contains("raise_to")) ev.raise_to = e.at("raise_to").get<Chips>();
    if (e.contains("cards")) ev.cards = parse_cards(e.at("cards").get<std::string>());
    h.events.push_back(std::move(ev));
  }
  for (const auto& r : j.at("showdown")) {
    ShowdownReveal rev;
    rev.player_id = r.at("player");
    if (!r.at("cards").is_null()) rev.hole_cards = parse_cards(r.at("cards").get<std::string>());
    h.showdown.push_back(std::move(rev));
  }
  h.pot_total = j.at("pot_total");
  return h;
}

json features_to_json(const ActionFeatures& f) {
  return {{"player", f.player_id},
          {"stage_id", f.stage_id},
          {"street", street_name(f.street)},
          {"win_prob", f.win_prob},
          {"position", position_label_name(f.position)},
          {"possible_earnings", f.possible_earnings},
          {"action", f.action == SimpleAction::kCall ? "Call" : "Raise"},
          {"min_bet", f.min_bet},
          {"betted_money", f.betted_money},
          {"raw_action", action_kind_name(f.raw_kind)}};
}

ActionFeatures features_from_json(const json& j) {
  ActionFeatures f;
  f.player_id = j.at("player");
  f.stage_id = j.at("stage_id");
  f.street = street_from_name(j.at("street"));
  f.street_group = street_group_of(f.street);
  f.win_prob = j.at("win_prob");
  f.position = j.at("position") == "Early" ? PositionLabel::kEarly : PositionLabel::kLate;
  f.possible_earnings = j.at("possible_earnings");
  f.action = j.at("action") == "Call" ? SimpleAction::kCall : SimpleAction::kRaise;
  f.min_bet = j.at("min_bet");
  f.betted_money = j.at("betted_money");
  f.raw_kind = action_kind_from_name(j.at("raw_action"));
  return f;
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_file(path)); }

// ---------------------------------------------------------------------------
// Stages.

std::string Pipeline::path(const std::string& name) const { return (fs::path(config_.out) / name).string(); }

std::string Pipeline::require(const std::string& name) const {
  const std::string p = path(name);
  if (!fs::exists(p)) throw Error(ErrorCode::kMissingUpstream, p + " not found; run the earlier stage first");
  return p;
}

std::string Pipeline::ingest(const std::vector<std::string>& inputs) {
  config_.validate();
  if (inputs.empty()) throw Error(ErrorCode::kInvalidArgument, "no input files");
  fs::create_directories(config_.out);
  Manifest manifest("ingest", config_);
  ingest_ = {};
  std::ostringstream archive, diagnostics;
  for (const auto& input : inputs) {
    std::ifstream in(input);
    if (!in) throw Error(ErrorCode::kIo, "cannot read " + input);
    manifest.input(input);
    HandStream stream(in);
    while (auto item = stream.next()) {
      if (auto* skip = std::get_if<SkipDiagnostic>(&*item)) {
        ++ingest_.skipped;
        diagnostics << input << ':' << skip->line_number << ": skipped: " << skip->reason << '\n';
        continue;
      }
      const auto& hand = std::get<ParsedHand>(*item);
      try {
        replay(hand);
      } catch (const Error& e) {
        ++ingest_.inconsistent;
        diagnostics << input << ": stage " << hand.stage_id << ": " << e.what() << '\n';
        continue;
      }
      ++ingest_.hands;
      archive << hand_to_json(hand).dump() << '\n';
    }
  }
  std::ostringstream summary;
  summary << ingest_.hands << " hands, " << ingest_.skipped << " skipped, " << ingest_.inconsistent
          << " inconsistent";
  write_file(path("ingest_diagnostics.txt"), diagnostics.str());
  manifest.counts() = {{"hands", ingest_.hands}, {"skipped", ingest_.skipped}, {"inconsistent", ingest_.inconsistent}};
  if (ingest_.hands == 0) {
    manifest.write(config_.out);
    throw Error(ErrorCode::kEmptyDataset, "no hands parsed (" + summary.str() + ")");
  }
  write_file(path(kHands), archive.str());
  manifest.output(path(kHands));
  manifest.write(config_.out);
  return summary.str();
}

std::string Pipeline::extract() {
  config_.validate();
  const std::string hands_path = require(kHands);
  Manifest manifest("extract", config_);
  manifest.input(hands_path);
  const std::uint64_t seed = stage_seed(config_.seed, 1);

  std::vector<ActionFeatures> rows;
  TallyMap tallies;
  ExtractionStats stats;
  std::size_t hands = 0;
  for_each_jsonl(hands_path, [&](const json& j) {
    const Game game = replay(hand_from_json(j));
    ++hands;
    for (const auto& d : game.decisions) tallies[d.action.actor].add(d.action.kind);
    auto r = extract_game(game, config_.equity, seed, &stats);
    rows.insert(rows.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  });

  std::ostringstream rows_out;
  for (const auto& f : rows) rows_out << features_to_json(f).dump() << '\n';
  write_file(path(kRows), rows_out.str());

  json tj = json::object();
  for (const auto& [id, t] : tallies) {
    tj[id] = {{"decisions", t.decisions}, {"folds", t.folds},   {"checks", t.checks}, {"calls", t.calls},
              {"bets", t.bets},           {"raises", t.raises}, {"allins", t.allins}};
  }
  write_file(path(kTallies), tj.dump(2) + "\n");

  const auto split = split_by_street(rows);
  for (const auto& [name, ds] : {std::pair{"preflop.arff", &split.preflop}, std::pair{"postflop.arff", &split.postflop}}) {
    std::ostringstream arff;
    write_arff(*ds, arff);
    write_file(path(name), arff.str());
    manifest.output(path(name));
  }

  json sj = {{"hands", hands},
             {"decisions", stats.decisions},
             {"rows", stats.rows},
             {"preflop_rows", split.preflop.size()},
             {"postflop_rows", split.postflop.size()},
             {"skipped_folds", stats.folds},
             {"skipped_missing_hole_cards", stats.missing_hole_cards},
             {"skipped_missing_board", stats.missing_board},
             {"clamped_possible_earnings", stats.clamps.possible_earnings},
             {"clamped_min_bet", stats.clamps.min_bet},
             {"clamped_betted_money", stats.clamps.betted_money}};
  write_file(path("extract_stats.json"), sj.dump(2) + "\n");
  manifest.output(path(kRows));
  manifest.output(path(kTallies));
  manifest.counts() = sj;
  manifest.write(config_.out);

  std::ostringstream s;
  s << hands << " hands, " << stats.decisions << " decisions, " << stats.rows << " rows (" << split.preflop.size()
    << " pre-flop, " << split.postflop.size() << " post-flop); skipped " << stats.folds << " folds, "
    << stats.missing_hole_cards << " without hole cards";
  return s.str();
}

std::string Pipeline::cluster_actions() {
  config_.validate();
  const std::string rows_path = require(kRows);
  Manifest manifest("cluster-actions", config_);
  manifest.input(rows_path);
  const auto rows = read_rows(rows_path);
  const auto split = split_by_street(rows);

  std::ostringstream s;
  std::vector<std::string> manifest_lines;
  const std::pair<const Dataset*, const char*> groups[] = {{&split.preflop, kPreModel}, {&split.postflop, kPostModel}};
  for (std::size_t g = 0; g < 2; ++g) {
    const Dataset& ds = *groups[g].first;
    const char* label = g == 0 ? "pre-flop" : "post-flop";
    if (ds.size() < 2) {
      throw Error(ErrorCode::kEmptyDataset, std::string(label) + " has " + std::to_string(ds.size()) + " rows");
    }
    auto filtered = remove_useless(ds, config_.min_variance, config_.max_dominance);
    SelectConfig sc = config_.action_select();
    sc.folds = std::min(sc.folds, filtered.dataset.size());
    Selection sel = select_k(filtered.dataset, stage_seed(config_.seed, 2 + g), sc);
    sel.model.set_removed_attributes(filtered.removed);
    save_model(sel.model, path(groups[g].second));
    manifest.output(path(groups[g].second));
    manifest.models()[groups[g].second] = sel.model.id();
    manifest.counts()[label] = {{"rows", ds.size()}, {"k", sel.best_k}, {"cv_scores", sel.cv_scores},
                                {"removed", filtered.removed}};
    manifest_lines.push_back(std::string(label) + ": k=" + std::to_string(sel.best_k) + " from " +
                             std::to_string(ds.size()) + " rows" +
                             (filtered.removed.empty() ? "" : ", removed " + join(filtered.removed, ", ")));
  }
  manifest.write(config_.out);
  return join(manifest_lines, "\n");
}

std::string Pipeline::profile() {
  config_.validate();
  const std::string rows_path = require(kRows);
  const std::string tallies_path = require(kTallies);
  const std::string pre_path = require(kPreModel);
  const std::string post_path = require(kPostModel);
  Manifest manifest("profile", config_);
  for (const auto& p : {rows_path, tallies_path, pre_path, post_path}) manifest.input(p);

  const auto rows = read_rows(rows_path);
  const auto tallies = read_tallies(tallies_path);
  const MixtureModel pre = load_model(pre_path);
  const MixtureModel post = load_model(post_path);
  const auto assignments = assign_actions(rows, pre, post);
  const auto profiles = build_profiles(assignments, tallies, pre.k(), post.k(), config_.min_actions);

  json pj = {{"pre_action_model", pre.id()}, {"post_action_model", post.id()}, {"min_actions", config_.min_actions}};
  pj["profiles"] = json::array();
  for (const auto& p : profiles) pj["profiles"].push_back(profile_to_json(p));
  write_file(path(kProfiles), pj.dump(2) + "\n");

  std::ostringstream csv;
  csv << "player_id,n_pre_actions,n_post_actions";
  for (std::size_t c = 0; c < pre.k(); ++c) csv << ',' << strategy_attribute_name(StreetGroup::kPreFlop, c);
  for (std::size_t c = 0; c < post.k(); ++c) csv << ',' << strategy_attribute_name(StreetGroup::kPostFlop, c);
  csv << ",fold_rate,aggression_factor\n";
  std::size_t complete = 0;
  for (const auto& p : profiles) {
    complete += p.complete() ? 1 : 0;
    csv << p.player_id << ',' << p.n_pre_actions << ',' << p.n_post_actions;
    for (const auto* v : {&p.pre_freq, &p.post_freq}) {
      const std::size_t k = v == &p.pre_freq ? pre.k() : post.k();
      for (std::size_t c = 0; c < k; ++c) csv << ',' << (*v ? fmt("%.6f", (**v)[c]) : std::string());
    }
    csv << ',' << csv_optional(p.fold_rate) << ',' << csv_optional(p.aggression_factor) << '\n';
  }
  write_file(path("profiles.csv"), csv.str());

  std::ostringstream acsv;
  acsv << "row,player_id,stage_id,street_group,cluster\n";
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    acsv << i << ',' << assignments[i].player_id << ',' << rows[i].stage_id << ','
         << street_group_name(assignments[i].group) << ',' << assignments[i].cluster << '\n';
  }
  write_file(path("assignments.csv"), acsv.str());

  for (const auto* name : {kProfiles, "profiles.csv", "assignments.csv"}) manifest.output(path(name));
  manifest.models() = {{"preflop", pre.id()}, {"postflop", post.id()}};
  manifest.counts() = {{"players", profiles.size()}, {"complete_profiles", complete}, {"rows", rows.size()}};
  manifest.write(config_.out);
  return std::to_string(profiles.size()) + " players, " + std::to_string(complete) +
         " with both pre-flop and post-flop profiles (min_actions " + std::to_string(config_.min_actions) + ")";
}

std::string Pipeline::cluster_players() {
  config_.validate();
  const std::string profiles_path = require(kProfiles);
  const std::string pre_path = require(kPreModel);
  const std::string post_path = require(kPostModel);
  Manifest manifest("cluster-players", config_);
  for (const auto& p : {profiles_path, pre_path, post_path}) manifest.input(p);
  const auto pf = read_profiles(profiles_path);
  const MixtureModel pre = load_model(pre_path);
  const MixtureModel post = load_model(post_path);
  check_model_ids(pf.pre_model, pf.post_model, pre, post, profiles_path);

  const StrategyModel sm =
      hhminer::cluster_players(pf.profiles, stage_seed(config_.seed, 4), config_.strategy_fit(), pre.id(), post.id());
  save_strategy(sm, path(kStrategy));
  manifest.output(path(kStrategy));
  manifest.models() = {{"strategy", sm.id()}, {"preflop", pre.id()}, {"postflop", post.id()}};
  manifest.counts() = {{"k", sm.model.k()}, {"removed", sm.model.removed_attributes()}};
  manifest.write(config_.out);
  std::string s = std::to_string(sm.model.k()) + " strategy clusters";
  if (!sm.model.removed_attributes().empty()) s += ", removed " + join(sm.model.removed_attributes(), ", ");
  return s;
}

std::string Pipeline::classify() {
  config_.validate();
  const std::string profiles_path = require(kProfiles);
  const std::string strategy_path = require(kStrategy);
  Manifest manifest("classify", config_);
  manifest.input(profiles_path);
  manifest.input(strategy_path);
  const auto pf = read_profiles(profiles_path);
  const StrategyModel sm = load_strategy(strategy_path);
  if (pf.pre_model != sm.pre_action_model_id || pf.post_model != sm.post_action_model_id) {
    throw Error(ErrorCode::kModelMismatch, "profiles and strategy model use different action models");
  }
  std::ostringstream csv;
  csv << "player_id,strategy_cluster,distance,fold_rate,aggression_factor,tightness,aggression,af_undefined\n";
  std::size_t classified = 0;
  std::vector<std::size_t> per_cluster(sm.model.k(), 0);
  for (const auto& p : pf.profiles) {
    csv << p.player_id << ',';
    if (p.complete()) {
      const auto a = classify_player(p, sm);
      ++classified;
      ++per_cluster[a.cluster];
      csv << a.cluster << ',' << fmt("%.6f", a.distance);
    } else {
      csv << ',';
    }
    csv << ',' << csv_optional(p.fold_rate) << ',' << csv_optional(p.aggression_factor) << ',';
    if (p.fold_rate) {
      const auto label = sklansky_classify(p);
      csv << (label.tight ? "tight" : "loose") << ',' << (label.aggressive ? "aggressive" : "passive") << ','
          << (label.af_undefined ? "true" : "false");
    } else {
      csv << ",,";
    }
    csv << '\n';
  }
  write_file(path(kClassification), csv.str());
  manifest.output(path(kClassification));
  manifest.models() = {{"strategy", sm.id()}};
  manifest.counts() = {{"players", pf.profiles.size()}, {"classified", classified}, {"per_cluster", per_cluster}};
  manifest.write(config_.out);
  std::ostringstream s;
  s << classified << " of " << pf.profiles.size() << " players classified;";
  for (std::size_t c = 0; c < per_cluster.size(); ++c) s << " #" << c << ": " << per_cluster[c];
  return s.str();
}

std::string Pipeline::predict(const std::optional<std::string>& player) {
  config_.validate();
  const std::string strategy_path = require(kStrategy);
  const std::string pre_path = require(kPreModel);
  const std::string post_path = require(kPostModel);
  Manifest manifest("predict", config_);
  for (const auto& p : {strategy_path, pre_path, post_path}) manifest.input(p);
  const StrategyModel sm = load_strategy(strategy_path);
  const MixtureModel pre = load_model(pre_path);
  const MixtureModel post = load_model(post_path);
  check_model_ids(sm.pre_action_model_id, sm.post_action_model_id, pre, post, strategy_path);

  std::ostringstream csv;
  csv << "strategy_cluster,weight,street_group,p_call,p_raise,expected_bet_fraction\n";
  for (std::size_t c = 0; c < sm.model.k(); ++c) {
    for (StreetGroup g : {StreetGroup::kPreFlop, StreetGroup::kPostFlop}) {
      const auto p = predict_action(c, sm, g == StreetGroup::kPreFlop ? pre : post, g);
      csv << c << ',' << fmt("%.4f", sm.model.components()[c].weight) << ',' << street_group_name(g) << ','
          << fmt("%.6f", p.p_call) << ',' << fmt("%.6f", p.p_raise) << ',' << fmt("%.6f", p.expected_bet_fraction)
          << '\n';
    }
  }
  write_file(path("predictions.csv"), csv.str());
  manifest.output(path("predictions.csv"));
  manifest.models() = {{"strategy", sm.id()}, {"preflop", pre.id()}, {"postflop", post.id()}};

  std::ostringstream s;
  s << "predictions for " << sm.model.k() << " strategy clusters";
  if (player) {
    const auto pf = read_profiles(require(kProfiles));
    auto it = std::find_if(pf.profiles.begin(), pf.profiles.end(),
                           [&](const PlayerProfile& p) { return p.player_id == *player; });
    if (it == pf.profiles.end()) throw Error(ErrorCode::kInvalidArgument, "unknown player '" + *player + "'");
    const auto a = classify_player(*it, sm);
    s << "\n" << *player << ": strategy cluster " << a.cluster << " (distance " << fmt("%.4f", a.distance) << ")";
    for (StreetGroup g : {StreetGroup::kPreFlop, StreetGroup::kPostFlop}) {
      const auto p = predict_action(a.cluster, sm, g == StreetGroup::kPreFlop ? pre : post, g);
      s << "\n  " << street_group_name(g) << ": P(Call)=" << fmt("%.4f", p.p_call)
        << " P(Raise)=" << fmt("%.4f", p.p_raise) << " expected bet=" << fmt("%.4f", p.expected_bet_fraction);
    }
  }
  manifest.write(config_.out);
  return s.str();
}

std::string Pipeline::export_arff(const std::string& street, const std::string& out_path) {
  config_.validate();
  const std::string rows_path = require(kRows);
  if (street != "all" && street != "preflop" && street != "postflop") {
    throw Error(ErrorCode::kInvalidArgument, "street must be all, preflop or postflop");
  }
  Manifest manifest("export-arff", config_);
  manifest.input(rows_path);
  const auto rows = read_rows(rows_path);
  Dataset ds;
  if (street == "all") {
    ds = to_dataset(rows);
  } else {
    auto split = split_by_street(rows);
    ds = street == "preflop" ? std::move(split.preflop) : std::move(split.postflop);
  }
  const std::string target = out_path.empty() ? path(street == "all" ? "poker_plays.arff" : "poker_plays_" + street + ".arff")
                                              : out_path;
  if (auto parent = fs::path(target).parent_path(); !parent.empty()) fs::create_directories(parent);
  std::ostringstream arff;
  write_arff(ds, arff);
  write_file(target, arff.str());
  manifest.output(target);
  manifest.counts() = {{"rows", ds.size()}};
  manifest.write(config_.out);
  return std::to_string(ds.size()) + " rows written to " + target;
}

// ---------------------------------------------------------------------------
// Reports.

std::string format_report_number(double v) {
  std::string s = fmt("%.4f", v);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::string centroid_table_csv(const MixtureModel& model, double dual_threshold, bool compact_header) {
  const auto cs = centroids(model, dual_threshold);
  std::ostringstream out;
  out << "Feature";
  for (std::size_t c = 0; c < cs.size(); ++c) {
    out << (compact_header ? ",Cluster#" : ",Cluster #") << c << ' '
        << static_cast<long>(std::lround(cs[c].weight * 100.0)) << '%';
  }
  out << '\n';
  for (std::size_t j = 0; j < model.schema().size(); ++j) {
    out << model.schema()[j].name;
    for (const auto& c : cs) {
      const auto& e = c.entries[j];
      out << ',' << (e.mean ? format_report_number(*e.mean) : e.label);
    }
    out << '\n';
  }
  return out.str();
}

std::string Pipeline::report(const std::optional<std::string>& models_dir) {
  config_.validate();
  const fs::path dir = models_dir ? fs::path(*models_dir) : fs::path(config_.out);
  auto need = [&](const char* name) {
    const auto p = (dir / name).string();
    if (!fs::exists(p)) throw Error(ErrorCode::kMissingUpstream, p + " not found");
    return p;
  };
  const std::string pre_path = need(kPreModel);
  const std::string post_path = need(kPostModel);
  Manifest manifest("report", config_);
  manifest.input(pre_path);
  manifest.input(post_path);
  const MixtureModel pre = load_model(pre_path);
  const MixtureModel post = load_model(post_path);
  const fs::path report_dir = fs::path(config_.out) / "report";
  fs::create_directories(report_dir);

  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& content) {
    const auto p = (report_dir / name).string();
    write_file(p, content);
    manifest.output(p);
    written.push_back(p);
  };
  emit("preflop_centroids.csv", centroid_table_csv(pre, config_.dual_threshold, false));
  emit("postflop_centroids.csv", centroid_table_csv(post, config_.dual_threshold, false));

  const auto strategy_path = (dir / kStrategy).string();
  if (fs::exists(strategy_path)) {
    manifest.input(strategy_path);
    const StrategyModel sm = load_strategy(strategy_path);
    emit("strategy_centroids.csv", centroid_table_csv(sm.model, config_.dual_threshold, true));
  }

  const auto rows_path = path(kRows);
  if (fs::exists(rows_path)) {
    manifest.input(rows_path);
    const auto rows = read_rows(rows_path);
    const auto split = split_by_street(rows);
    std::ostringstream hist;
    hist << "feature,street_group,bin,count,relative_frequency\n";
    for (const auto& [group, ds] : {std::pair{"PreFlop", &split.preflop}, std::pair{"PostFlop", &split.postflop}}) {
      for (std::size_t j = 0; j < ds->schema.size(); ++j) {
        const auto& a = ds->schema[j];
        std::vector<std::size_t> counts(a.is_numeric() ? 10 : a.values.size(), 0);
        for (const auto& r : ds->rows) {
          const std::size_t bin = a.is_numeric()
                                      ? std::min<std::size_t>(9, static_cast<std::size_t>(std::max(0.0, r[j]) * 10.0))
                                      : static_cast<std::size_t>(r[j]);
          ++counts[bin];
        }
        for (std::size_t b = 0; b < counts.size(); ++b) {
          const std::string bin = a.is_numeric() ? "[" + fmt("%.1f", static_cast<double>(b) / 10.0) + "," +
                                                       fmt("%.1f", static_cast<double>(b + 1) / 10.0) +
                                                       (b == 9 ? "]" : ")")
                                                 : a.values[b];
          const double rel = ds->empty() ? 0.0 : static_cast<double>(counts[b]) / static_cast<double>(ds->size());
          hist << a.name << ',' << group << ",\"" << bin << "\"," << counts[b] << ',' << fmt("%.6f", rel) << '\n';
        }
      }
    }
    emit("histograms.csv", hist.str());
  }
  manifest.models() = {{"preflop", pre.id()}, {"postflop", post.id()}};
  manifest.write(config_.out);
  return "wrote " + join(written, ", ");
}

// ---------------------------------------------------------------------------
// Published models.

namespace {

struct ActionColumn {
  int percent;
  double win_prob;
  const char* position;
  double possible_earnings;
  const char* action;
  double betted_money;
};

std::vector<double> label_probs(const std::string& label, const std::vector<std::string>& values) {
  std::vector<double> p(values.size(), 0.0);
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(label);
  while (std::getline(in, part, '/')) parts.push_back(part);
  for (const auto& x : parts) {
    auto it = std::find(values.begin(), values.end(), x);
    if (it == values.end()) throw Error(ErrorCode::kInvalidArgument, "bad label " + label);
    p[static_cast<std::size_t>(it - values.begin())] = 1.0 / static_cast<double>(parts.size());
  }
  return p;
}

MixtureModel reference_action_model(const std::vector<ActionColumn>& cols) {
  Schema schema = {Attribute::numeric("win_prob"), Attribute::nominal("position", {"Early", "Late"}),
                   Attribute::numeric("possible_earnings"), Attribute::nominal("action", {"Call", "Raise"}),
                   Attribute::numeric("betted_money")};
  double total = 0.0;
  for (const auto& c : cols) total += c.percent;
  std::vector<Component> comps;
  for (const auto& c : cols) {
    Component comp;
    comp.weight = c.percent / total;
    comp.mean = {c.win_prob, c.possible_earnings, c.betted_money};
    comp.variance.assign(3, kVarianceFloor);
    comp.probs = {label_probs(c.position, schema[1].values), label_probs(c.action, schema[3].values)};
    comps.push_back(std::move(comp));
  }
  MixtureModel m(std::string(kActionRelation), std::move(schema), std::move(comps));
  m.set_removed_attributes({"min_bet"});
  m.mutable_fit_log().source = "reference";
  return m;
}

}  // namespace

MixtureModel reference_preflop_model() {
  return reference_action_model({
      {22, 0.4532, "Early", 0.0264, "Call", 0.0093},
      {9, 0.5502, "Early/Late", 0.0323, "Raise", 0.0543},
      {38, 0.4893, "Late", 0.0056, "Raise", 0.0128},
      {7, 0.5539, "Early/Late", 0.3585, "Call/Raise", 0.4755},
      {9, 0.4824, "Early", 0.0862, "Call", 0.0387},
      {15, 0.4703, "Early", 0.004, "Raise", 0.008},
  });
}

MixtureModel reference_postflop_model() {
  return reference_action_model({
      {13, 0.6946, "Late", 0.1118, "Raise", 0.0574},
      {15, 0.5297, "Late", 0.0867, "Call", 0.0008},
      {14, 0.7052, "Early/Late", 0.6305, "Call/Raise", 0.3586},
      {17, 0.6463, "Early", 0.1133, "Call/Raise", 0.0558},
      {42, 0.5306, "Early", 0.1186, "Call", 0},
  });
}

StrategyModel reference_strategy_model() {
  const int percent[] = {13, 3, 21, 15, 33, 10, 5};
  // Rows: Pre_c0, Pre_c2..Pre_c5, Post_c0..Post_c4; columns: clusters.
  const double table[10][7] = {
      {0.3345, 0.1007, 0.4626, 0.0093, 0.2281, 0.0019, 0.0212},
      {0.2167, 0.1909, 0, 0.7364, 0.3157, 0.0404, 0.0104},
      {0.0201, 0.174, 0, 0, 0.0075, 0.0094, 0.0535},
      {0.1971, 0.1836, 0.0051, 0.1504, 0.1009, 0.6254, 0.0261},
      {0.2316, 0.3508, 0.5322, 0.1039, 0.3477, 0.3228, 0.8889},
      {0.1091, 0.2132, 0, 0.3059, 0.0807, 0.1022, 0.0666},
      {0.2033, 0.0572, 0, 0.4297, 0.2511, 0.8755, 0.0765},
      {0.1378, 0.7045, 0.0578, 0.1536, 0.0172, 0.0222, 0.1722},
      {0.2674, 0.0126, 0.1564, 0.0604, 0.1194, 0, 0.2684},
      {0.2824, 0.0125, 0.7858, 0.0504, 0.5315, 0.0002, 0.4163},
  };
  Schema schema;
  for (std::size_t c : {0u, 2u, 3u, 4u, 5u}) schema.push_back(Attribute::numeric(strategy_attribute_name(StreetGroup::kPreFlop, c)));
  for (std::size_t c = 0; c < 5; ++c) schema.push_back(Attribute::numeric(strategy_attribute_name(StreetGroup::kPostFlop, c)));

  StrategyModel sm;
  sm.k_pre = 6;
  sm.k_post = 5;
  std::vector<Component> comps;
  for (std::size_t c = 0; c < 7; ++c) {
    Component comp;
    comp.weight = percent[c] / 100.0;
    std::vector<double> full(11, 0.0);  // Pre_c1 stays 0
    for (std::size_t r = 0; r < 10; ++r) {
      comp.mean.push_back(table[r][c]);
      full[r == 0 ? 0 : r + 1] = table[r][c];
    }
    comp.variance.assign(10, kVarianceFloor);
    comps.push_back(std::move(comp));
    sm.strategy_centroids.push_back(std::move(full));
  }
  sm.model = MixtureModel(std::string(kStrategyRelation), std::move(schema), std::move(comps));
  sm.model.set_removed_attributes({"Pre_c1"});
  sm.model.mutable_fit_log().source = "reference";
  sm.pre_action_model_id = reference_preflop_model().id();
  sm.post_action_model_id = reference_postflop_model().id();
  return sm;
}

void write_reference_models(const std::string& dir) {
  fs::create_directories(dir);
  save_model(reference_preflop_model(), (fs::path(dir) / kPreModel).string());
  save_model(reference_postflop_model(), (fs::path(dir) / kPostModel).string());
  save_strategy(reference_strategy_model(), (fs::path(dir) / kStrategy).string());
}

}  // namespace hhminer
