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

// Parser for casino "Stage #" hand histories.
//
// A hand block starts at a line matching `Stage #<digits>:` and runs until the
// next such line. Every money token ("$6", "$2,214.25") is converted to an
// exact integer number of cents.

#ifndef HHMINER_HANDLOG_HPP_
#define HHMINER_HANDLOG_HPP_

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hhminer/cards.hpp"

namespace hhminer {

using Chips = std::int64_t;  // integer cents

Chips parse_money(std::string_view text);
std::string format_money(Chips cents);

enum class Street : std::uint8_t { kPreFlop = 0, kFlop = 1, kTurn = 2, kRiver = 3 };
std::string_view street_name(Street street);

enum class EventKind : std::uint8_t {
  kPostSmallBlind,
  kPostBigBlind,
  kFold,
  kCheck,
  kCall,
  kBet,
  kRaiseTo,
  kAllIn,
  kReturnUncalled,
  kShow,
  kDoesNotShow,
  kCollect,
  kStreetMarker,
  kShowdownMarker,
};
std::string_view event_kind_name(EventKind kind);

struct SeatEntry {
  int seat_index = 0;
  std::string player_id;
  Chips starting_stack = 0;

  bool operator==(const SeatEntry&) const = default;
};

struct LogEvent {
  std::optional<std::string> actor;
  EventKind kind = EventKind::kStreetMarker;
  // Chips moved by the event: blind, call, bet, raise increment, all-in
  // amount, uncalled return or collected amount.
  Chips amount = 0;
  // Resulting total commitment for RaiseTo and All-In(Raise) events.
  std::optional<Chips> raise_to;
  Street street = Street::kPreFlop;
  // Cards dealt by a street marker, or cards revealed by a Show event.
  std::vector<Card> cards;

  bool operator==(const LogEvent&) const = default;
};

struct ShowdownReveal {
  std::string player_id;
  std::optional<std::vector<Card>> hole_cards;

  bool operator==(const ShowdownReveal&) const = default;
};

struct ParsedHand {
  std::int64_t stage_id = 0;
  std::string variant;
  Chips stakes = 0;
  std::string table_name;
  int dealer_seat = 0;
  std::vector<SeatEntry> seats;
  std::vector<LogEvent> events;
  std::vector<ShowdownReveal> showdown;
  Chips pot_total = 0;

  const SeatEntry* find_seat(std::string_view player_id) const;
  bool operator==(const ParsedHand&) const = default;
};

// Parses a single hand block. Unknown lines inside the hand are skipped and,
// when `notes` is given, described there.
// Throws ParseError (MalformedHand / UnsupportedVariant).
ParsedHand parse_hand(std::string_view text, std::vector<std::string>* notes = nullptr);

// Writes a hand back in the casino format; parse_hand(serialize_hand(h)) == h.
std::string serialize_hand(const ParsedHand& hand);

struct SkipDiagnostic {
  std::optional<std::int64_t> stage_id;
  std::size_t line_number = 0;  // 1-based line in the source
  std::string reason;
};

using StreamItem = std::variant<ParsedHand, SkipDiagnostic>;

// Pulls hands one at a time from a text source. Malformed hands come out as
// SkipDiagnostic items; the stream itself never throws on bad data.
class HandStream {
 public:
  explicit HandStream(std::istream& in) : in_(in) {}

  std::optional<StreamItem> next();

 private:
  bool read_block(std::string& block, std::size_t& first_line);

  std::istream& in_;
  std::size_t line_no_ = 0;
  std::optional<std::string> pending_header_;
};

std::vector<StreamItem> parse_stream(std::istream& in);

}  // namespace hhminer

#endif  // HHMINER_HANDLOG_HPP_
