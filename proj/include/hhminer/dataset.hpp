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

// Mixed numeric/nominal tables and their ARFF text form.

#ifndef HHMINER_DATASET_HPP_
#define HHMINER_DATASET_HPP_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace hhminer {

enum class AttributeKind { kNumeric, kNominal };

struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::kNumeric;
  std::vector<std::string> values;  // nominal only

  static Attribute numeric(std::string name) { return {std::move(name), AttributeKind::kNumeric, {}}; }
  static Attribute nominal(std::string name, std::vector<std::string> values) {
    return {std::move(name), AttributeKind::kNominal, std::move(values)};
  }
  bool is_numeric() const { return kind == AttributeKind::kNumeric; }
  std::optional<std::size_t> value_index(std::string_view v) const;

  bool operator==(const Attribute&) const = default;
};

using Schema = std::vector<Attribute>;

std::optional<std::size_t> find_attribute(const Schema& schema, std::string_view name);

// Rows hold one double per attribute; nominal cells store the value index.
struct Dataset {
  std::string relation;
  Schema schema;
  std::vector<std::vector<double>> rows;

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }

  // Copy keeping only the named attributes, in schema order.
  Dataset project(const std::vector<std::string>& keep) const;

  bool operator==(const Dataset&) const = default;
};

// Numerics at three decimals; nominal values right-padded to the longest
// value of their attribute ("Late ,").
void write_arff(const Dataset& dataset, std::ostream& out);
// Throws ArffSyntaxError carrying the offending line number.
Dataset read_arff(std::istream& in);

std::string format_arff_number(double v);

}  // namespace hhminer

#endif  // HHMINER_DATASET_HPP_
