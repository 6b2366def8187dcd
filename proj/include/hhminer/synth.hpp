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

// Scripted no-limit hold'em tables for testing the mining pipeline.
//
// Every player follows one archetype: hand-strength thresholds for staying
// in and for raising, a raise probability, and a range of raise sizes
// measured as a fraction of the remaining stack. Strength is the hand's
// heads-up equity (Monte Carlo pre-flop, hand strength after). Hands are
// legal by construction (each action goes through apply_action), all
// players start with equal stacks, and every player still in at the end
// shows down.

#ifndef HHMINER_SYNTH_HPP_
#define HHMINER_SYNTH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "hhminer/handlog.hpp"

namespace hhminer::synth {

struct Archetype {
  std::string name;
  double raise_prob = 0.0;  // chance to bet or raise when allowed
  double fold_prob = 0.0;   // chance to fold when facing a bet
  double min_size = 0.0;    // raise size beyond the call, fraction of stack
  double max_size = 0.0;
  double continue_strength = 0.0;  // folds to a bet below this strength
  double raise_strength = 0.0;     // raises only at or above this strength
};

// "tight-aggressive", "loose-passive", "loose-aggressive".
const std::vector<Archetype>& default_archetypes();

struct Player {
  std::string id;
  std::size_t archetype = 0;
};

struct Config {
  std::size_t players = 150;
  std::size_t hands = 800;
  std::size_t table_size = 6;
  Chips stack = 20000;
  Chips small_blind = 50;
  Chips big_blind = 100;
  int max_raises_per_round = 2;
  std::int64_t first_stage_id = 1000000;
  std::uint64_t seed = 1;
  std::vector<Archetype> archetypes = default_archetypes();
};

struct Corpus {
  std::vector<Player> players;  // player i has archetype i % archetypes.size()
  std::vector<ParsedHand> hands;
};

// Seats players round-robin: each round shuffles the roster into tables of
// `table_size` (a remainder of one sits out) and plays one hand per table.
Corpus generate(const Config& config);

// Hands in log format, separated by blank lines.
std::string to_text(const Corpus& corpus);

}  // namespace hhminer::synth

#endif  // HHMINER_SYNTH_HPP_
