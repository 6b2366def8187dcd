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

#include "hhminer/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "hhminer/error.hpp"

namespace hhminer {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '\'' || s.front() == '"') && s.back() == s.front()) {
    s = s.substr(1, s.size() - 2);
  }
  return std::string(s);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void syntax(std::size_t line, const std::string& what) {
  throw ParseError(ErrorCode::kArffSyntaxError, line, what);
}

}  // namespace

std::optional<std::size_t> Attribute::value_index(std::string_view v) const {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == v) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> find_attribute(const Schema& schema, std::string_view name) {
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (schema[i].name == name) return i;
  }
  return std::nullopt;
}

Dataset Dataset::project(const std::vector<std::string>& keep) const {
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (std::find(keep.begin(), keep.end(), schema[i].name) != keep.end()) cols.push_back(i);
  }
  Dataset out;
  out.relation = relation;
  for (auto c : cols) out.schema.push_back(schema[c]);
  out.rows.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<double> nr;
    nr.reserve(cols.size());
    for (auto c : cols) nr.push_back(r[c]);
    out.rows.push_back(std::move(nr));
  }
  return out;
}

std::string format_arff_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  if (std::string_view(buf) == "-0.000") return "0.000";
  return buf;
}

void write_arff(const Dataset& dataset, std::ostream& out) {
  out << "@relation " << dataset.relation << '\n';
  std::vector<std::size_t> width(dataset.schema.size(), 0);
  for (std::size_t i = 0; i < dataset.schema.size(); ++i) {
    const auto& a = dataset.schema[i];
    out << "@attribute " << a.name << ' ';
    if (a.is_numeric()) {
      out << "numeric\n";
      continue;
    }
    out << '{';
    for (std::size_t v = 0; v < a.values.size(); ++v) {
      if (v) out << ", ";
      out << a.values[v];
      width[i] = std::max(width[i], a.values[v].size());
    }
    out << "}\n";
  }
  out << "@data\n";
  for (const auto& row : dataset.rows) {
    for (std::size_t i = 0; i < dataset.schema.size(); ++i) {
      if (i) out << ',';
      const auto& a = dataset.schema[i];
      if (a.is_numeric()) {
        out << format_arff_number(row[i]);
      } else {
        const auto& v = a.values.at(static_cast<std::size_t>(row[i]));
        out << v << std::string(width[i] - v.size(), ' ');
      }
    }
    out << '\n';
  }
}

Dataset read_arff(std::istream& in) {
  Dataset ds;
  std::string raw;
  std::size_t line_no = 0;
  bool in_data = false;
  bool saw_relation = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '%') continue;
    if (!in_data) {
      if (line.front() != '@') syntax(line_no, "expected a declaration");
      auto sp = line.find_first_of(" \t");
      std::string keyword = lower(line.substr(0, sp));
      std::string_view rest = sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));
      if (keyword == "@relation") {
        ds.relation = unquote(rest);
        saw_relation = true;
      } else if (keyword == "@attribute") {
        if (!saw_relation) syntax(line_no, "@attribute before @relation");
        auto brace = rest.find('{');
        if (brace != std::string_view::npos) {
          auto close = rest.find('}', brace);
          if (close == std::string_view::npos) syntax(line_no, "unterminated nominal value list");
          std::vector<std::string> values;
          for (auto v : split(rest.substr(brace + 1, close - brace - 1), ',')) {
            auto t = unquote(v);
            if (t.empty()) syntax(line_no, "empty nominal value");
            values.push_back(std::move(t));
          }
          ds.schema.push_back(Attribute::nominal(unquote(rest.substr(0, brace)), std::move(values)));
        } else {
          auto tsp = rest.find_last_of(" \t");
          if (tsp == std::string_view::npos) syntax(line_no, "attribute lacks a type");
          std::string type = lower(trim(rest.substr(tsp)));
          if (type != "numeric" && type != "real" && type != "integer") {
            syntax(line_no, "unsupported attribute type '" + type + "'");
          }
          ds.schema.push_back(Attribute::numeric(unquote(rest.substr(0, tsp))));
        }
      } else if (keyword == "@data") {
        if (ds.schema.empty()) syntax(line_no, "@data before any @attribute");
        in_data = true;
      } else {
        syntax(line_no, "unknown declaration '" + keyword + "'");
      }
      continue;
    }
    auto cells = split(line, ',');
    if (cells.size() != ds.schema.size()) {
      syntax(line_no, "expected " + std::to_string(ds.schema.size()) + " values, got " +
                          std::to_string(cells.size()));
    }
    std::vector<double> row(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      auto cell = trim(cells[i]);
      const auto& a = ds.schema[i];
      if (cell == "?") syntax(line_no, "missing values are not supported");
      if (a.is_numeric()) {
        std::string tmp(cell);
        char* end = nullptr;
        double v = std::strtod(tmp.c_str(), &end);
        if (tmp.empty() || end != tmp.c_str() + tmp.size() || !std::isfinite(v)) {
          syntax(line_no, "bad number '" + tmp + "'");
        }
        row[i] = v;
      } else {
        auto idx = a.value_index(unquote(cell));
        if (!idx) syntax(line_no, "value '" + std::string(cell) + "' not declared for " + a.name);
        row[i] = static_cast<double>(*idx);
      }
    }
    ds.rows.push_back(std::move(row));
  }
  if (!saw_relation) syntax(line_no, "missing @relation");
  if (!in_data) syntax(line_no, "missing @data");
  return ds;
}

}  // namespace hhminer
