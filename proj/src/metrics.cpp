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

#include "voranon/metrics.hpp"

#include <cmath>
#include <map>
#include <unordered_map>

namespace voranon {

double compactness(std::span<const InitialRegion> regions, const AggregationResult& result) {
  double total = 0.0;
  for (const InitialRegion& region : regions) {
    const auto it = result.region_mapping.find(region.region_id);
    if (it == result.region_mapping.end()) {
      throw ValidationError("compactness: region '" + region.region_id + "' is unmapped");
    }
    total += distance(region.location, result.sites[static_cast<std::size_t>(it->second)]);
  }
  return total;
}

double discernibility(const AggregationResult& result, int k, bool classical) {
  std::map<std::pair<int, ClassKey>, std::int64_t> counts;
  for (const PublishedRecord& record : result.published_records) {
    ++counts[{record.aggregated_id, record.values}];
  }
  double total = 0.0;
  for (const auto& [group, count] : counts) {
    if (count >= static_cast<std::int64_t>(k)) {
      total += static_cast<double>(count) * static_cast<double>(count);
    }
  }
  if (classical) {
    total += static_cast<double>(result.suppressed_record_count) *
             static_cast<double>(result.input_record_count);
  }
  return total;
}

double non_uniform_entropy(const AggregationResult& result) {
  std::unordered_map<std::string, std::int64_t> per_region;
  std::unordered_map<int, std::int64_t> per_aggregate;
  for (const PublishedRecord& record : result.published_records) {
    ++per_region[record.original_region_id];
    ++per_aggregate[record.aggregated_id];
  }
  double total_bits = 0.0;
  for (const PublishedRecord& record : result.published_records) {
    const double p = static_cast<double>(per_region[record.original_region_id]) /
                     static_cast<double>(per_aggregate[record.aggregated_id]);
    total_bits -= std::log2(p);
  }
  return total_bits == 0.0 ? 0.0 : total_bits;
}

MetricsReport evaluate_metrics(std::span<const InitialRegion> regions,
                               const AggregationResult& result, int k,
                               bool classical_discernibility) {
  MetricsReport report;
  report.suppression_count = result.suppressed_record_count;
  report.suppression_fraction =
      result.input_record_count > 0
          ? static_cast<double>(result.suppressed_record_count) /
                static_cast<double>(result.input_record_count)
          : 0.0;
  report.compactness = compactness(regions, result);
  report.discernibility = discernibility(result, k, classical_discernibility);
  report.non_uniform_entropy = non_uniform_entropy(result);
  report.site_count = static_cast<int>(result.sites.size());

  std::int64_t lowest = 0;
  bool any = false;
  for (const AggregatedRegion& aggregated : result.regions) {
    if (aggregated.empty) continue;
    // Published classes only: suppressed classes no longer cap the level.
    std::int64_t level = 0;
    bool seen = false;
    for (const auto& [key, count] : aggregated.merged_table.entries()) {
      if (count < static_cast<std::int64_t>(k)) continue;
      level = seen ? std::min(level, count) : count;
      seen = true;
    }
    if (!seen) continue;
    lowest = any ? std::min(lowest, level) : level;
    any = true;
  }
  report.global_anonymity = any ? lowest : 0;
  return report;
}

}  // namespace voranon
