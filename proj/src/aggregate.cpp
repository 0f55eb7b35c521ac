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

#include "voranon/aggregate.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace voranon {

AggregationResult aggregate(std::span<const InitialRegion> regions,
                            std::span<const Record> records, std::span<const Point> sites,
                            int k) {
  if (sites.empty()) {
    throw ValidationError("aggregation needs at least one site");
  }
  if (k < 2) {
    throw ValidationError("aggregation needs k >= 2");
  }
  if (regions.empty()) {
    throw ValidationError("aggregation needs at least one region");
  }

  AggregationResult result;
  result.input_record_count = static_cast<std::int64_t>(records.size());

  std::vector<Point> region_points;
  region_points.reserve(regions.size());
  for (const InitialRegion& region : regions) region_points.push_back(region.location);
  const Rect extent = bounding_rect(region_points);

  const VoronoiDiagram diagram = VoronoiDiagram::build(sites, extent);
  result.sites = diagram.sites();
  result.duplicate_sites_collapsed = diagram.duplicates_collapsed();

  result.regions.resize(diagram.site_count());
  for (std::size_t s = 0; s < diagram.site_count(); ++s) {
    result.regions[s].aggregated_id = static_cast<int>(s);
    result.regions[s].site = diagram.sites()[s];
  }

  std::unordered_map<std::string, int> region_to_aggregate;
  region_to_aggregate.reserve(regions.size());
  for (const InitialRegion& region : regions) {
    const auto aggregated = static_cast<int>(diagram.nearest_site(region.location));
    result.region_mapping[region.region_id] = aggregated;
    region_to_aggregate[region.region_id] = aggregated;
    auto& target = result.regions[static_cast<std::size_t>(aggregated)];
    target.member_region_ids.push_back(region.region_id);
    for (const auto& [key, count] : region.class_table.entries()) {
      target.merged_table.add(key, count);
    }
  }

  // Classes below k lose all of their records; everything else is released
  // with the aggregated id as the geographic identifier.
  std::vector<std::set<ClassKey>> suppressed_keys(result.regions.size());
  for (auto& aggregated : result.regions) {
    aggregated.empty = aggregated.member_region_ids.empty();
    if (aggregated.merged_table.empty()) {
      aggregated.anonymity_level = 0;
      continue;
    }
    aggregated.anonymity_level = aggregated.merged_table.min_cardinality();
    for (const auto& [key, count] : aggregated.merged_table.entries()) {
      if (count < static_cast<std::int64_t>(k)) {
        result.suppressed.push_back(
            SuppressedClass{aggregated.aggregated_id, key, count});
        result.suppressed_record_count += count;
        suppressed_keys[static_cast<std::size_t>(aggregated.aggregated_id)].insert(key);
      }
    }
  }

  result.published_records.reserve(records.size());
  for (const Record& record : records) {
    const auto it = region_to_aggregate.find(record.region_id);
    if (it == region_to_aggregate.end()) {
      throw ValidationError("record '" + record.record_id + "' references unknown region '" +
                            record.region_id + "'");
    }
    const int aggregated = it->second;
    if (suppressed_keys[static_cast<std::size_t>(aggregated)].count(record.values) > 0) {
      continue;
    }
    result.published_records.push_back(
        PublishedRecord{record.record_id, record.region_id, aggregated, record.values});
  }
  return result;
}

bool verify_k_anonymity(const AggregationResult& result, int k) {
  std::map<std::pair<int, ClassKey>, std::int64_t> counts;
  for (const PublishedRecord& record : result.published_records) {
    ++counts[{record.aggregated_id, record.values}];
  }
  for (const auto& [group, count] : counts) {
    if (count < static_cast<std::int64_t>(k)) return false;
  }
  return true;
}

}  // namespace voranon
