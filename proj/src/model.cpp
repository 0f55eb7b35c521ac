// Copyright 2026 the voranon authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "voranon/model.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace voranon {

Schema::Schema(std::vector<Attribute> attributes, std::string geographic_attribute)
    : attributes_(std::move(attributes)),
      geographic_attribute_(std::move(geographic_attribute)) {
  if (geographic_attribute_.empty()) {
    throw ValidationError("schema: geographic attribute name must not be empty");
  }
  std::unordered_set<std::string> names;
  for (const auto& attr : attributes_) {
    if (attr.name.empty()) {
      throw ValidationError("schema: attribute name must not be empty");
    }
    if (!names.insert(attr.name).second) {
      throw ValidationError("schema: duplicate attribute name '" + attr.name + "'");
    }
    if (attr.name == geographic_attribute_) {
      throw ValidationError("schema: geographic attribute '" + attr.name +
                            "' must not be listed among the categorical quasi-identifiers");
    }
    if (attr.domain.empty()) {
      throw ValidationError("schema: attribute '" + attr.name + "' has an empty domain");
    }
    std::unordered_map<std::string, std::size_t> lookup;
    for (std::size_t i = 0; i < attr.domain.size(); ++i) {
      if (!lookup.emplace(attr.domain[i], i).second) {
        throw ValidationError("schema: attribute '" + attr.name +
                              "' repeats category '" + attr.domain[i] + "'");
      }
    }
    domain_lookup_.push_back(std::move(lookup));
  }
}

std::optional<std::size_t> Schema::attribute_index(std::string_view name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Schema::domain_index(std::size_t attr, std::string_view value) const {
  const auto& lookup = domain_lookup_[attr];
  auto it = lookup.find(std::string(value));
  if (it == lookup.end()) return std::nullopt;
  return it->second;
}

void ClassTable::add(const ClassKey& key, std::int64_t count) {
  if (count < 0) {
    throw ValidationError("class table: negative cardinality");
  }
  if (count == 0) return;
  entries_[key] += count;
  total_ += count;
}

std::int64_t ClassTable::min_cardinality() const {
  if (entries_.empty()) {
    throw ValidationError("class table: min cardinality of an empty table");
  }
  std::int64_t lowest = entries_.begin()->second;
  for (const auto& [key, count] : entries_) {
    lowest = std::min(lowest, count);
  }
  return lowest;
}

std::optional<GapsModel> GapsModel::preset(std::string_view name) {
  std::string lowered(name);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lowered == "western") return western();
  if (lowered == "central") return central();
  if (lowered == "eastern") return eastern();
  return std::nullopt;
}

void PipelineConfig::validate(std::size_t region_count) const {
  if (k < 2) {
    throw ValidationError("config: k must be at least 2");
  }
  if (site_count_approach == SiteCountApproach::Fixed) {
    if (fixed_site_count < 1 ||
        static_cast<std::size_t>(fixed_site_count) > region_count) {
      throw ValidationError("config: fixed site count must be in [1, region count]");
    }
  }
  if (gaps_model.multiplier <= 0.0 || gaps_model.exponent <= 0.0) {
    throw ValidationError("config: cutoff model constants must be positive");
  }
  if (adc_max_committed_moves < 1) {
    throw ValidationError("config: move cap must be at least 1");
  }
}

void validate_record(const Record& record, const Schema& schema) {
  if (record.values.size() != schema.attribute_count()) {
    throw ValidationError("record '" + record.record_id + "': expected " +
                          std::to_string(schema.attribute_count()) + " values, got " +
                          std::to_string(record.values.size()));
  }
  for (std::size_t i = 0; i < record.values.size(); ++i) {
    if (!schema.domain_index(i, record.values[i])) {
      throw ValidationError("record '" + record.record_id + "': value '" + record.values[i] +
                            "' is not in the domain of attribute '" +
                            schema.attributes()[i].name + "'");
    }
  }
}

ClassTable build_class_table(std::span<const Record> records, const Schema& schema) {
  ClassTable table;
  for (const Record& record : records) {
    validate_record(record, schema);
    table.add(record.values);
  }
  return table;
}

ClassTable merge_tables(std::span<const ClassTable> tables) {
  ClassTable merged;
  for (const ClassTable& table : tables) {
    for (const auto& [key, count] : table.entries()) {
      merged.add(key, count);
    }
  }
  return merged;
}

}  // namespace voranon
