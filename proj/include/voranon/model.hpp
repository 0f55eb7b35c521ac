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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "voranon/geometry.hpp"

namespace voranon {

/// Raised when input data violates the schema or a structural precondition.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One categorical quasi-identifier: a name and its closed set of labels.
struct Attribute {
  std::string name;
  std::vector<std::string> domain;
};

/// The categorical quasi-identifiers of a data set plus the name of the
/// geographic attribute, which is generalized by regionalization rather
/// than by category coarsening and is therefore kept out of the list.
class Schema {
 public:
  Schema(std::vector<Attribute> attributes, std::string geographic_attribute);

  const std::vector<Attribute>& attributes() const { return attributes_; }
  const std::string& geographic_attribute() const { return geographic_attribute_; }
  std::size_t attribute_count() const { return attributes_.size(); }

  std::optional<std::size_t> attribute_index(std::string_view name) const;

  /// Index of `value` in attribute `attr`'s domain, or nullopt.
  std::optional<std::size_t> domain_index(std::size_t attr, std::string_view value) const;

 private:
  std::vector<Attribute> attributes_;
  std::string geographic_attribute_;
  std::vector<std::unordered_map<std::string, std::size_t>> domain_lookup_;
};

/// One microdata row. `values` holds one label per schema attribute, in
/// schema order.
struct Record {
  std::string record_id;
  std::string region_id;
  std::vector<std::string> values;
};

/// Tuple of labels, one per quasi-identifier, identifying an equivalence
/// class. Compares lexicographically.
using ClassKey = std::vector<std::string>;

/// Multiset of equivalence classes: class key -> cardinality. Entries with
/// cardinality zero are never stored; `total` is the sum of cardinalities.
class ClassTable {
 public:
  using Map = std::map<ClassKey, std::int64_t>;

  ClassTable() = default;

  void add(const ClassKey& key, std::int64_t count = 1);

  const Map& entries() const { return entries_; }
  std::int64_t total() const { return total_; }
  bool empty() const { return entries_.empty(); }

  /// Smallest cardinality across entries. Precondition: not empty.
  std::int64_t min_cardinality() const;

  bool operator==(const ClassTable& other) const {
    return total_ == other.total_ && entries_ == other.entries_;
  }

 private:
  Map entries_;
  std::int64_t total_ = 0;
};

/// A fine-granularity input region located at a point, with the population
/// and equivalence-class table of the records that live in it.
struct InitialRegion {
  std::string region_id;
  Point location;
  std::int64_t population = 0;
  ClassTable class_table;
};

/// Power-law cutoff model: cutoff(v) = multiplier * v^exponent. The
/// multiplier is the constant written e^B0 in the source models.
struct GapsModel {
  double multiplier = 0.0;
  double exponent = 0.0;

  static GapsModel western() { return {1588.0, 0.42}; }
  static GapsModel central() { return {1436.0, 0.43}; }
  static GapsModel eastern() { return {1978.0, 0.304}; }

  /// Case-insensitive preset lookup ("western", "central", "eastern").
  static std::optional<GapsModel> preset(std::string_view name);
};

enum class LogBase { Natural, Two, Ten };
enum class SiteCountApproach { Entropy, MaxCombs, Fixed };
enum class PlacementApproach { Balanced, Adc };
enum class AdcSeedMethod { Balanced, Random };

struct PipelineConfig {
  int k = 2;
  SiteCountApproach site_count_approach = SiteCountApproach::Entropy;
  int fixed_site_count = 0;  // required for SiteCountApproach::Fixed
  PlacementApproach placement = PlacementApproach::Balanced;
  AdcSeedMethod adc_seed_method = AdcSeedMethod::Balanced;
  GapsModel gaps_model = GapsModel::western();
  std::string gaps_preset_name = "western";  // empty when custom constants given
  LogBase log_base = LogBase::Natural;
  std::uint64_t rng_seed = 0;
  int adc_max_committed_moves = 1000;
  bool classical_discernibility = false;

  /// Throws ValidationError on out-of-range values; `region_count` bounds
  /// the fixed site count.
  void validate(std::size_t region_count) const;
};

/// Checks a record against the schema. Throws ValidationError naming the
/// record and attribute on the first out-of-domain value.
void validate_record(const Record& record, const Schema& schema);

/// Groups records by their quasi-identifier tuple and counts them.
ClassTable build_class_table(std::span<const Record> records, const Schema& schema);

/// Per-key sum of the input tables. Associative and commutative.
ClassTable merge_tables(std::span<const ClassTable> tables);

}  // namespace voranon
