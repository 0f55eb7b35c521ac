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

// Shared generators and independent oracles. Everything here deliberately
// avoids the library's own code paths: oracles are plain loops and maps so
// that a bug in the implementation cannot hide in its own checker.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "voranon/aggregate.hpp"
#include "voranon/geometry.hpp"
#include "voranon/model.hpp"

namespace testsupport {

using voranon::AggregationResult;
using voranon::Attribute;
using voranon::ClassKey;
using voranon::InitialRegion;
using voranon::Point;
using voranon::PublishedRecord;
using voranon::Record;
using voranon::Schema;

inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// --- independent oracles ---------------------------------------------------

// Plain group-by count over record value tuples.
inline std::map<ClassKey, std::int64_t> group_by_oracle(const std::vector<Record>& records) {
  std::map<ClassKey, std::int64_t> counts;
  for (const Record& record : records) ++counts[record.values];
  return counts;
}

// Linear-scan nearest site with the lowest-index tie rule.
inline std::size_t nearest_oracle(const Point& q, const std::vector<Point>& sites) {
  std::size_t best = 0;
  double best_d2 = (q.x - sites[0].x) * (q.x - sites[0].x) +
                   (q.y - sites[0].y) * (q.y - sites[0].y);
  for (std::size_t i = 1; i < sites.size(); ++i) {
    const double dx = q.x - sites[i].x;
    const double dy = q.y - sites[i].y;
    const double d2 = dx * dx + dy * dy;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

// Direct accumulation of region-to-site distances.
inline double compactness_oracle(const std::vector<InitialRegion>& regions,
                                 const AggregationResult& result) {
  double total = 0.0;
  for (const InitialRegion& region : regions) {
    const Point& site = result.sites[static_cast<std::size_t>(
        result.region_mapping.at(region.region_id))];
    total += std::hypot(region.location.x - site.x, region.location.y - site.y);
  }
  return total;
}

// Group the published records per (aggregated id, value tuple) and sum the
// squared sizes of the groups meeting k.
inline double discernibility_oracle(const AggregationResult& result, int k) {
  std::map<std::pair<int, ClassKey>, std::int64_t> groups;
  for (const PublishedRecord& record : result.published_records) {
    ++groups[{record.aggregated_id, record.values}];
  }
  double total = 0.0;
  for (const auto& [group, size] : groups) {
    if (size >= k) total += static_cast<double>(size) * static_cast<double>(size);
  }
  return total;
}

// O(n^2) evaluation straight from the definition: for each published
// record, count matching original regions and matching aggregated regions
// by rescanning the whole collection.
inline double non_uniform_entropy_oracle(const AggregationResult& result) {
  double bits = 0.0;
  for (const PublishedRecord& record : result.published_records) {
    std::int64_t same_region = 0;
    std::int64_t same_aggregate = 0;
    for (const PublishedRecord& other : result.published_records) {
      if (other.original_region_id == record.original_region_id) ++same_region;
      if (other.aggregated_id == record.aggregated_id) ++same_aggregate;
    }
    bits -= std::log2(static_cast<double>(same_region) / static_cast<double>(same_aggregate));
  }
  return bits == 0.0 ? 0.0 : bits;
}

// Upper critical value of the chi-square distribution via the
// Wilson-Hilferty cube approximation; z is the standard normal quantile.
inline double chi_square_critical(int degrees_of_freedom, double z) {
  const double d = static_cast<double>(degrees_of_freedom);
  const double term = 1.0 - 2.0 / (9.0 * d) + z * std::sqrt(2.0 / (9.0 * d));
  return d * term * term * term;
}

// --- random instance generators ---------------------------------------------

inline Schema random_schema(std::mt19937_64& rng, int max_attributes = 3,
                            int max_domain = 4) {
  const int attribute_count = static_cast<int>(uniform_int(rng, 1, max_attributes));
  std::vector<Attribute> attributes;
  for (int a = 0; a < attribute_count; ++a) {
    Attribute attr;
    attr.name = "attr" + std::to_string(a);
    const int domain_size = static_cast<int>(uniform_int(rng, 2, max_domain));
    for (int v = 0; v < domain_size; ++v) {
      attr.domain.push_back("a" + std::to_string(a) + "v" + std::to_string(v));
    }
    attributes.push_back(std::move(attr));
  }
  return Schema(std::move(attributes), "region");
}

inline std::vector<std::string> random_values(std::mt19937_64& rng, const Schema& schema) {
  std::vector<std::string> values;
  values.reserve(schema.attribute_count());
  for (const Attribute& attr : schema.attributes()) {
    values.push_back(attr.domain[static_cast<std::size_t>(
        uniform_int(rng, 0, static_cast<std::int64_t>(attr.domain.size()) - 1))]);
  }
  return values;
}

struct RandomDataset {
  Schema schema;
  std::vector<InitialRegion> regions;
  std::vector<Record> records;
};

// Regions scattered in a box, each filled with random records.
inline RandomDataset random_dataset(std::mt19937_64& rng, int max_regions, int max_records) {
  RandomDataset data{random_schema(rng), {}, {}};
  const int region_count = static_cast<int>(uniform_int(rng, 1, max_regions));
  const int record_count = static_cast<int>(uniform_int(rng, region_count, max_records));
  for (int r = 0; r < region_count; ++r) {
    InitialRegion region;
    region.region_id = "r" + std::to_string(r);
    region.location = Point{uniform_unit(rng) * 100.0, uniform_unit(rng) * 100.0};
    data.regions.push_back(std::move(region));
  }
  for (int n = 0; n < record_count; ++n) {
    Record record;
    record.record_id = "rec" + std::to_string(n);
    const auto region_index =
        static_cast<std::size_t>(uniform_int(rng, 0, region_count - 1));
    record.region_id = data.regions[region_index].region_id;
    record.values = random_values(rng, data.schema);
    data.regions[region_index].class_table.add(record.values);
    ++data.regions[region_index].population;
    data.records.push_back(std::move(record));
  }
  return data;
}

}  // namespace testsupport
