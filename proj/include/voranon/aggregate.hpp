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
#include <span>
#include <string>
#include <vector>

#include "voranon/geometry.hpp"
#include "voranon/model.hpp"

namespace voranon {

/// A record cleared for release. The aggregated id replaces the original
/// region as the geographic identifier; the original id stays here only so
/// the publisher can evaluate information loss, it is never written to the
/// published file.
struct PublishedRecord {
  std::string record_id;
  std::string original_region_id;
  int aggregated_id = 0;
  std::vector<std::string> values;
};

struct AggregatedRegion {
  int aggregated_id = 0;
  Point site;
  std::vector<std::string> member_region_ids;
  ClassTable merged_table;
  std::int64_t anonymity_level = 0;  // min class cardinality; 0 when empty
  bool empty = false;
};

struct SuppressedClass {
  int aggregated_id = 0;
  ClassKey key;
  std::int64_t cardinality = 0;
};

struct AggregationResult {
  std::vector<AggregatedRegion> regions;
  std::map<std::string, int> region_mapping;  // initial region id -> aggregated id
  std::vector<SuppressedClass> suppressed;
  std::vector<PublishedRecord> published_records;
  std::int64_t input_record_count = 0;
  std::int64_t suppressed_record_count = 0;
  std::vector<Point> sites;  // deduplicated
  std::size_t duplicate_sites_collapsed = 0;
};

/// Assigns every initial region to its nearest site, merges the class
/// tables per aggregated region, and suppresses every class whose merged
/// cardinality falls below k. Published records keep record ids and
/// attribute values; their geographic identifier becomes the aggregated id.
AggregationResult aggregate(std::span<const InitialRegion> regions,
                            std::span<const Record> records, std::span<const Point> sites,
                            int k);

/// Post-hoc audit rebuilt from the published records alone: true iff every
/// (aggregated region, class) among them has cardinality >= k.
bool verify_k_anonymity(const AggregationResult& result, int k);

}  // namespace voranon
