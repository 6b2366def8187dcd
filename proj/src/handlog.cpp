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

#include "hhminer/handlog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "hhminer/error.hpp"

namespace hhminer {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Extracts the money token that starts at the first '$' at or after `from`.
std::optional<std::pair<Chips, std::size_t>> money_at(std::string_view s, std::size_t from = 0) {
  auto pos = s.find('$', from);
  if (pos == std::string_view::npos) return std::nullopt;
  std::size_t end = pos + 1;
  while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == ',' || s[end] == '.')) {
    ++end;
  }
  // A trailing period ends a sentence rather than starting cents.
  while (end > pos + 1 && (s[end - 1] == '.' || s[end - 1] == ',')) --end;
  return std::make_pair(parse_money(s.substr(pos, end - pos)), end);
}

struct Marker {
  std::string_view label;
  bool is_street;
  Street street;
};

constexpr Marker kMarkers[] = {
    {"POCKET CARDS", true, Street::kPreFlop},
    {"FLOP", true, Street::kFlop},
    {"TURN", true, Street::kTurn},
    {"RIVER", true, Street::kRiver},
    {"SHOW DOWN", false, Street::kRiver},
    {"SUMMARY", false, Street::kRiver},
};

std::size_t cards_dealt_on(Street s) {
  switch (s) {
    case Street::kPreFlop: return 0;
    case Street::kFlop: return 3;
    default: return 1;
  }
}

class BlockParser {
 public:
  BlockParser(std::string_view text, std::vector<std::string>* notes) : notes_(notes) {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto nl = text.find('\n', start);
      if (nl == std::string_view::npos) nl = text.size();
      lines_.push_back(text.substr(start, nl - start));
      start = nl + 1;
    }
  }

  ParsedHand run() {
    std::size_t i = 0;
    skip_blank(i);
    if (i >= lines_.size()) fail(1, ErrorCode::kMalformedHand, "empty hand block");
    parse_header(i, trim(lines_[i]));
    ++i;
    skip_blank(i);
    if (i >= lines_.size() || !starts_with(trim(lines_[i]), "Table:")) {
      fail(i + 1, ErrorCode::kMalformedHand, "expected 'Table:' line");
    }
    parse_table(i, trim(lines_[i]));
    ++i;
    while (i < lines_.size()) {
      auto line = trim(lines_[i]);
      if (starts_with(line, "Seat ") && line.find(" in chips)") != std::string_view::npos) {
        parse_seat(i, line);
        ++i;
      } else if (line.empty()) {
        ++i;
      } else {
        break;
      }
    }
    if (hand_.seats.empty()) fail(i + 1, ErrorCode::kMalformedHand, "no seats");
    validate_seats(i);
    names_by_length_.clear();
    for (const auto& s : hand_.seats) names_by_length_.push_back(s.player_id);
    std::sort(names_by_length_.begin(), names_by_length_.end(),
              [](const std::string& a, const std::string& b) { return a.size() > b.size(); });

    for (; i < lines_.size(); ++i) {
      auto line = trim(lines_[i]);
      if (line.empty()) continue;
      if (in_summary_) {
        parse_summary_line(i, line);
      } else {
        parse_body_line(i, line);
      }
    }
    if (!saw_total_pot_) fail(lines_.size(), ErrorCode::kMalformedHand, "missing 'Total Pot' summary line");
    return std::move(hand_);
  }

 private:
  [[noreturn]] void fail(std::size_t line, ErrorCode code, const std::string& msg) {
    throw ParseError(code, line, msg);
  }

  void note(std::size_t i, std::string_view what) {
    if (notes_) {
      notes_->push_back("stage " + std::to_string(hand_.stage_id) + " line " + std::to_string(i + 1) +
                        ": ignored " + std::string(what));
    }
  }

  void skip_blank(std::size_t& i) {
    while (i < lines_.size() && trim(lines_[i]).empty()) ++i;
  }

  Chips money(std::size_t i, std::string_view s, std::size_t from = 0, std::size_t* end = nullptr) {
    try {
      auto m = money_at(s, from);
      if (!m) fail(i + 1, ErrorCode::kMalformedHand, "missing amount in '" + std::string(s) + "'");
      if (end) *end = m->second;
      return m->first;
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(i + 1, ErrorCode::kMalformedHand, e.what());
    }
  }

  void parse_header(std::size_t i, std::string_view line) {
    if (!starts_with(line, "Stage #")) fail(i + 1, ErrorCode::kMalformedHand, "expected 'Stage #' header");
    auto colon = line.find(':');
    if (colon == std::string_view::npos) fail(i + 1, ErrorCode::kMalformedHand, "header lacks ':'");
    auto id = parse_int(line.substr(7, colon - 7));
    if (!id) fail(i + 1, ErrorCode::kMalformedHand, "bad stage id");
    hand_.stage_id = *id;
    auto rest = trim(line.substr(colon + 1));
    auto sp = rest.find(' ');
    hand_.variant = std::string(rest.substr(0, sp));
    if (!iequals(hand_.variant, "Holdem") && !iequals(hand_.variant, "Hold'em")) {
      fail(i + 1, ErrorCode::kUnsupportedVariant, "variant '" + hand_.variant + "' is not Hold'em");
    }
    // Stakes: the last money token on the header line.
    std::optional<Chips> stakes;
    std::size_t from = 0;
    while (true) {
      auto pos = line.find('$', from);
      if (pos == std::string_view::npos) break;
      std::size_t end = 0;
      stakes = money(i, line, pos, &end);
      from = end;
    }
    if (!stakes) fail(i + 1, ErrorCode::kMalformedHand, "header lacks stakes");
    hand_.stakes = *stakes;
  }

  void parse_table(std::size_t i, std::string_view line) {
    auto body = trim(line.substr(6));
    auto seat_pos = body.find("Seat #");
    if (seat_pos == std::string_view::npos) fail(i + 1, ErrorCode::kMalformedHand, "table line lacks dealer seat");
    auto name_end = body.find(" (");
    if (name_end == std::string_view::npos || name_end > seat_pos) name_end = seat_pos;
    hand_.table_name = std::string(trim(body.substr(0, name_end)));
    auto after = body.substr(seat_pos + 6);
    auto sp = after.find(' ');
    auto dealer = parse_int(after.substr(0, sp));
    if (!dealer) fail(i + 1, ErrorCode::kMalformedHand, "bad dealer seat");
    hand_.dealer_seat = static_cast<int>(*dealer);
  }

  void parse_seat(std::size_t i, std::string_view line) {
    auto dash = line.find(" - ");
    if (dash == std::string_view::npos) fail(i + 1, ErrorCode::kMalformedHand, "bad seat line");
    auto idx = parse_int(line.substr(5, dash - 5));
    if (!idx) fail(i + 1, ErrorCode::kMalformedHand, "bad seat index");
    auto paren = line.rfind(" ($");
    if (paren == std::string_view::npos || paren < dash + 3) fail(i + 1, ErrorCode::kMalformedHand, "bad seat stack");
    SeatEntry seat;
    seat.seat_index = static_cast<int>(*idx);
    seat.player_id = std::string(line.substr(dash + 3, paren - dash - 3));
    seat.starting_stack = money(i, line, paren);
    if (seat.player_id.empty()) fail(i + 1, ErrorCode::kMalformedHand, "empty player id");
    if (seat.starting_stack <= 0) fail(i + 1, ErrorCode::kMalformedHand, "non-positive starting stack");
    hand_.seats.push_back(std::move(seat));
  }

  void validate_seats(std::size_t i) {
    bool dealer_found = false;
    for (std::size_t a = 0; a < hand_.seats.size(); ++a) {
      if (hand_.seats[a].seat_index == hand_.dealer_seat) dealer_found = true;
      for (std::size_t b = a + 1; b < hand_.seats.size(); ++b) {
        if (hand_.seats[a].seat_index == hand_.seats[b].seat_index) {
          fail(i + 1, ErrorCode::kMalformedHand, "duplicate seat index");
        }
        if (hand_.seats[a].player_id == hand_.seats[b].player_id) {
          fail(i + 1, ErrorCode::kMalformedHand, "duplicate player id");
        }
      }
    }
    if (!dealer_found) fail(i + 1, ErrorCode::kMalformedHand, "dealer seat not among seats");
  }

  void parse_marker(std::size_t i, std::string_view line) {
    auto close = line.find("***", 3);
    if (close == std::string_view::npos) {
      note(i, "unterminated marker");
      return;
    }
    auto label = trim(line.substr(3, close - 3));
    auto tail = line.substr(close + 3);
    for (const auto& m : kMarkers) {
      if (label != m.label) continue;
      if (m.label == "SUMMARY") {
        in_summary_ = true;
        return;
      }
      LogEvent ev;
      if (!m.is_street) {
        ev.kind = EventKind::kShowdownMarker;
        ev.street = street_;
        hand_.events.push_back(std::move(ev));
        return;
      }
      if (saw_street_marker_ && m.street <= street_) {
        fail(i + 1, ErrorCode::kMalformedHand, "street marker out of order");
      }
      saw_street_marker_ = true;
      street_ = m.street;
      ev.kind = EventKind::kStreetMarker;
      ev.street = m.street;
      std::vector<Card> cards;
      try {
        cards = parse_cards(tail);
      } catch (const Error& e) {
        fail(i + 1, ErrorCode::kMalformedHand, e.what());
      }
      std::size_t want = cards_dealt_on(m.street);
      if (cards.size() > want) cards.erase(cards.begin(), cards.end() - static_cast<std::ptrdiff_t>(want));
      if (!cards.empty() && cards.size() != want) {
        fail(i + 1, ErrorCode::kMalformedHand, "wrong number of board cards");
      }
      ev.cards = std::move(cards);
      hand_.events.push_back(std::move(ev));
      return;
    }
    note(i, "marker '" + std::string(label) + "'");
  }

  void add_reveal(const std::string& player, std::optional<std::vector<Card>> cards) {
    for (auto& r : hand_.showdown) {
      if (r.player_id == player) {
        if (cards) r.hole_cards = std::move(cards);
        return;
      }
    }
    hand_.showdown.push_back({player, std::move(cards)});
  }

  void parse_body_line(std::size_t i, std::string_view line) {
    if (starts_with(line, "***")) {
      parse_marker(i, line);
      return;
    }
    const std::string* actor = nullptr;
    std::string_view rest;
    bool collects = false;
    for (const auto& name : names_by_length_) {
      if (!starts_with(line, name)) continue;
      auto after = line.substr(name.size());
      if (starts_with(after, " - ")) {
        actor = &name;
        rest = trim(after.substr(3));
        break;
      }
      if (starts_with(after, " Collects ") || starts_with(after, " collects ")) {
        actor = &name;
        rest = trim(after.substr(1));
        collects = true;
        break;
      }
    }
    if (!actor) {
      note(i, "line '" + std::string(line) + "'");
      return;
    }
    LogEvent ev;
    ev.actor = *actor;
    ev.street = street_;
    if (collects) {
      ev.kind = EventKind::kCollect;
      ev.amount = money(i, rest);
    } else if (starts_with(rest, "Posts small blind")) {
      ev.kind = EventKind::kPostSmallBlind;
      ev.amount = money(i, rest);
    } else if (starts_with(rest, "Posts big blind")) {
      ev.kind = EventKind::kPostBigBlind;
      ev.amount = money(i, rest);
    } else if (rest == "Folds") {
      ev.kind = EventKind::kFold;
    } else if (rest == "Checks") {
      ev.kind = EventKind::kCheck;
    } else if (starts_with(rest, "Calls ")) {
      ev.kind = EventKind::kCall;
      ev.amount = money(i, rest);
    } else if (starts_with(rest, "Bets ")) {
      ev.kind = EventKind::kBet;
      ev.amount = money(i, rest);
    } else if (starts_with(rest, "Raises ")) {
      ev.kind = EventKind::kRaiseTo;
      std::size_t end = 0;
      ev.amount = money(i, rest, 0, &end);
      if (rest.find(" to ", end) == std::string_view::npos) {
        fail(i + 1, ErrorCode::kMalformedHand, "raise without 'to' total");
      }
      ev.raise_to = money(i, rest, end);
      if (*ev.raise_to < ev.amount || *ev.raise_to <= 0) {
        fail(i + 1, ErrorCode::kMalformedHand, "raise total below increment");
      }
    } else if (starts_with(rest, "All-In")) {
      ev.kind = EventKind::kAllIn;
      std::size_t end = 0;
      ev.amount = money(i, rest, 0, &end);
      if (rest.find(" to ", end) != std::string_view::npos) {
        ev.raise_to = money(i, rest, end);
        if (*ev.raise_to < ev.amount) fail(i + 1, ErrorCode::kMalformedHand, "all-in total below increment");
      }
    } else if (starts_with(rest, "returned (")) {
      ev.kind = EventKind::kReturnUncalled;
      ev.amount = money(i, rest);
    } else if (rest == "Does not show") {
      ev.kind = EventKind::kDoesNotShow;
      add_reveal(*actor, std::nullopt);
    } else if (starts_with(rest, "Shows")) {
      ev.kind = EventKind::kShow;
      auto open = rest.find('[');
      auto close = rest.find(']', open == std::string_view::npos ? 0 : open);
      if (open == std::string_view::npos || close == std::string_view::npos) {
        fail(i + 1, ErrorCode::kMalformedHand, "show without cards");
      }
      try {
        ev.cards = parse_cards(rest.substr(open + 1, close - open - 1));
      } catch (const Error& e) {
        fail(i + 1, ErrorCode::kMalformedHand, e.what());
      }
      if (ev.cards.size() != 2) fail(i + 1, ErrorCode::kMalformedHand, "shown hand must have two cards");
      add_reveal(*actor, ev.cards);
    } else {
      note(i, "action '" + std::string(rest) + "'");
      return;
    }
    hand_.events.push_back(std::move(ev));
  }

  void parse_summary_line(std::size_t i, std::string_view line) {
    if (starts_with(line, "Total Pot")) {
      hand_.pot_total = money(i, line);
      saw_total_pot_ = true;
    }
  }

  std::vector<std::string_view> lines_;
  std::vector<std::string>* notes_;
  ParsedHand hand_;
  std::vector<std::string> names_by_length_;
  Street street_ = Street::kPreFlop;
  bool saw_street_marker_ = false;
  bool in_summary_ = false;
  bool saw_total_pot_ = false;
};

bool is_header(std::string_view line) {
  line = trim(line);
  if (!starts_with(line, "Stage #")) return false;
  std::size_t i = 7;
  std::size_t digits = 0;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i, ++digits;
  return digits > 0 && i < line.size() && line[i] == ':';
}

}  // namespace

Chips parse_money(std::string_view text) {
  auto bad = [&]() -> Error {
    return Error(ErrorCode::kInvalidArgument, "bad money token '" + std::string(text) + "'");
  };
  std::string_view s = text;
  if (!s.empty() && s.front() == '(') s.remove_prefix(1);
  if (!s.empty() && s.back() == ')') s.remove_suffix(1);
  if (s.empty() || s.front() != '$') throw bad();
  s.remove_prefix(1);
  auto dot = s.find('.');
  std::string_view whole = s.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (whole.empty()) throw bad();
  Chips dollars = 0;
  std::size_t group = 0;
  bool first_group = true;
  bool grouped = whole.find(',') != std::string_view::npos;
  for (char c : whole) {
    if (c == ',') {
      if (first_group ? (group == 0 || group > 3) : group != 3) throw bad();
      first_group = false;
      group = 0;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
    dollars = dollars * 10 + (c - '0');
    ++group;
    if (dollars > (Chips{1} << 50)) throw bad();
  }
  if (grouped && group != 3) throw bad();
  Chips cents = 0;
  if (dot != std::string_view::npos) {
    if (frac.empty() || frac.size() > 2) throw bad();
    for (char c : frac) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
    }
    cents = (frac[0] - '0') * 10 + (frac.size() == 2 ? frac[1] - '0' : 0);
  }
  return dollars * 100 + cents;
}

std::string format_money(Chips cents) {
  if (cents < 0) throw Error(ErrorCode::kInvalidArgument, "negative amount");
  std::string digits = std::to_string(cents / 100);
  std::string out = "$";
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  Chips rem = cents % 100;
  if (rem != 0) {
    out += '.';
    out += static_cast<char>('0' + rem / 10);
    out += static_cast<char>('0' + rem % 10);
  }
  return out;
}

std::string_view street_name(Street street) {
  switch (street) {
    case Street::kPreFlop: return "PreFlop";
    case Street::kFlop: return "Flop";
    case Street::kTurn: return "Turn";
    case Street::kRiver: return "River";
  }
  return "?";
}

std::string_view event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::kPostSmallBlind: return "PostSmallBlind";
    case EventKind::kPostBigBlind: return "PostBigBlind";
    case EventKind::kFold: return "Fold";
    case EventKind::kCheck: return "Check";
    case EventKind::kCall: return "Call";
    case EventKind::kBet: return "Bet";
    case EventKind::kRaiseTo: return "RaiseTo";
    case EventKind::kAllIn: return "AllIn";
    case EventKind::kReturnUncalled: return "ReturnUncalled";
    case EventKind::kShow: return "Show";
    case EventKind::kDoesNotShow: return "DoesNotShow";
    case EventKind::kCollect: return "Collect";
    case EventKind::kStreetMarker: return "StreetMarker";
    case EventKind::kShowdownMarker: return "ShowdownMarker";
  }
  return "?";
}

const SeatEntry* ParsedHand::find_seat(std::string_view player_id) const {
  for (const auto& s : seats) {
    if (s.player_id == player_id) return &s;
  }
  return nullptr;
}

ParsedHand parse_hand(std::string_view text, std::vector<std::string>* notes) {
  return BlockParser(text, notes).run();
}

std::string serialize_hand(const ParsedHand& hand) {
  std::ostringstream out;
  out << "Stage #" << hand.stage_id << ": " << hand.variant << ' '
      << (hand.seats.size() == 2 ? std::string("(1 on 1)") : "(" + std::to_string(hand.seats.size()) + " max)")
      << " No Limit " << format_money(hand.stakes) << '\n';
  out << "Table: " << hand.table_name << " (Real Money) Seat #" << hand.dealer_seat << " is the dealer\n";
  for (const auto& s : hand.seats) {
    out << "Seat " << s.seat_index << " - " << s.player_id << " (" << format_money(s.starting_stack)
        << " in chips)\n";
  }
  std::vector<Card> board;
  for (const auto& ev : hand.events) {
    const std::string actor = ev.actor.value_or("");
    switch (ev.kind) {
      case EventKind::kPostSmallBlind:
        out << actor << " - Posts small blind " << format_money(ev.amount) << '\n';
        break;
      case EventKind::kPostBigBlind:
        out << actor << " - Posts big blind " << format_money(ev.amount) << '\n';
        break;
      case EventKind::kFold: out << actor << " - Folds\n"; break;
      case EventKind::kCheck: out << actor << " - Checks\n"; break;
      case EventKind::kCall: out << actor << " - Calls " << format_money(ev.amount) << '\n'; break;
      case EventKind::kBet: out << actor << " - Bets " << format_money(ev.amount) << '\n'; break;
      case EventKind::kRaiseTo:
        out << actor << " - Raises " << format_money(ev.amount) << " to " << format_money(ev.raise_to.value_or(0))
            << '\n';
        break;
      case EventKind::kAllIn:
        if (ev.raise_to) {
          out << actor << " - All-In(Raise) " << format_money(ev.amount) << " to " << format_money(*ev.raise_to)
              << '\n';
        } else {
          out << actor << " - All-In " << format_money(ev.amount) << '\n';
        }
        break;
      case EventKind::kReturnUncalled:
        out << actor << " - returned (" << format_money(ev.amount) << ") : not called\n";
        break;
      case EventKind::kShow: out << actor << " - Shows [" << to_string(ev.cards) << "]\n"; break;
      case EventKind::kDoesNotShow: out << actor << " - Does not show\n"; break;
      case EventKind::kCollect: out << actor << " Collects " << format_money(ev.amount) << " from main pot\n"; break;
      case EventKind::kShowdownMarker: out << "*** SHOW DOWN ***\n"; break;
      case EventKind::kStreetMarker:
        switch (ev.street) {
          case Street::kPreFlop: out << "*** POCKET CARDS ***\n"; break;
          case Street::kFlop: out << "*** FLOP ***"; break;
          case Street::kTurn: out << "*** TURN ***"; break;
          case Street::kRiver: out << "*** RIVER ***"; break;
        }
        if (ev.street != Street::kPreFlop) {
          if (!ev.cards.empty()) {
            if (!board.empty()) out << " [" << to_string(board) << "]";
            out << " [" << to_string(ev.cards) << "]";
            board.insert(board.end(), ev.cards.begin(), ev.cards.end());
          }
          out << '\n';
        }
        break;
    }
  }
  out << "*** SUMMARY ***\n";
  out << "Total Pot(" << format_money(hand.pot_total) << ")\n";
  return out.str();
}

bool HandStream::read_block(std::string& block, std::size_t& first_line) {
  block.clear();
  std::string line;
  if (pending_header_) {
    block = *pending_header_ + '\n';
    pending_header_.reset();
    first_line = line_no_;
  } else {
    // Skip anything before the first header.
    while (std::getline(in_, line)) {
      ++line_no_;
      if (is_header(line)) {
        block = line + '\n';
        first_line = line_no_;
        break;
      }
    }
    if (block.empty()) return false;
  }
  while (std::getline(in_, line)) {
    ++line_no_;
    if (is_header(line)) {
      pending_header_ = line;
      return true;
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    block += line;
    block += '\n';
  }
  return true;
}

std::optional<StreamItem> HandStream::next() {
  std::string block;
  std::size_t first_line = 0;
  if (!read_block(block, first_line)) return std::nullopt;
  try {
    return StreamItem(parse_hand(block));
  } catch (const ParseError& e) {
    SkipDiagnostic d;
    auto line = trim(std::string_view(block).substr(0, block.find('\n')));
    auto colon = line.find(':');
    if (colon != std::string_view::npos && colon > 7) d.stage_id = parse_int(line.substr(7, colon - 7));
    d.line_number = first_line + e.line() - 1;
    d.reason = e.what();
    return StreamItem(std::move(d));
  } catch (const Error& e) {
    SkipDiagnostic d;
    d.line_number = first_line;
    d.reason = e.what();
    return StreamItem(std::move(d));
  }
}

std::vector<StreamItem> parse_stream(std::istream& in) {
  std::vector<StreamItem> items;
  HandStream stream(in);
  while (auto item = stream.next()) items.push_back(std::move(*item));
  return items;
}

}  // namespace hhminer
