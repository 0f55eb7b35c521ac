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

#include "voranon/datagen.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <unordered_set>

namespace voranon {

namespace {

constexpr std::int64_t kMinPopulation = 400;
constexpr std::int64_t kMaxPopulation = 700;

std::uint64_t fnv1a64(std::string_view text, std::uint64_t hash = 0xcbf29ce484222325ULL) {
  for (const char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

// Bounded uniform integer without std::uniform_int_distribution, whose
// algorithm the standard leaves unspecified across implementations.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return draw % bound;
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t sample_category(std::mt19937_64& rng, const std::vector<double>& probabilities) {
  const double u = uniform_unit(rng);
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    cumulative += probabilities[i];
    if (u < cumulative) return i;
  }
  // Rounding in the cumulative sum can leave u just past the final edge.
  for (std::size_t i = probabilities.size(); i-- > 0;) {
    if (probabilities[i] > 0.0) return i;
  }
  return probabilities.size() - 1;
}

}  // namespace

DistributionSpec::DistributionSpec(std::map<std::string, AttributeDistributions> strata)
    : strata_(std::move(strata)) {}

void DistributionSpec::validate(const Schema& schema) const {
  if (strata_.empty()) {
    throw ValidationError("distribution spec has no strata");
  }
  for (const auto& [stratum, distributions] : strata_) {
    for (const Attribute& attr : schema.attributes()) {
      const auto it = distributions.find(attr.name);
      if (it == distributions.end()) {
        throw ValidationError("stratum '" + stratum + "' is missing a distribution for attribute '" +
                              attr.name + "'");
      }
      const std::vector<double>& probabilities = it->second;
      if (probabilities.size() != attr.domain.size()) {
        throw ValidationError("stratum '" + stratum + "', attribute '" + attr.name +
                              "': expected " + std::to_string(attr.domain.size()) +
                              " probabilities, got " + std::to_string(probabilities.size()));
      }
      double sum = 0.0;
      for (const double p : probabilities) {
        if (p < 0.0) {
          throw ValidationError("stratum '" + stratum + "', attribute '" + attr.name +
                                "': negative probability");
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-9) {
        throw ValidationError("stratum '" + stratum + "', attribute '" + attr.name +
                              "': probabilities sum to " + std::to_string(sum));
      }
    }
  }
}

std::uint64_t region_stream_seed(std::uint64_t run_seed, const std::string& region_id) {
  std::uint64_t hash = fnv1a64(region_id);
  hash ^= run_seed + 0x9e3779b97f4a7c15ULL + (hash << 6) + (hash >> 2);
  return hash;
}

GeneratedData generate(std::span<const RegionTemplate> templates, const DistributionSpec& spec,
                       const Schema& schema, std::uint64_t rng_seed) {
  spec.validate(schema);
  if (templates.empty()) {
    throw ValidationError("generation needs at least one region template");
  }
  std::unordered_set<std::string> seen_ids;
  for (const RegionTemplate& tmpl : templates) {
    if (!seen_ids.insert(tmpl.region_id).second) {
      throw ValidationError("duplicate region id '" + tmpl.region_id + "' in templates");
    }
    if (!spec.has_stratum(tmpl.stratum)) {
      throw ValidationError("region '" + tmpl.region_id + "' names unknown stratum '" +
                            tmpl.stratum + "'");
    }
  }

  GeneratedData data;
  data.regions.reserve(templates.size());
  for (const RegionTemplate& tmpl : templates) {
    std::mt19937_64 rng(region_stream_seed(rng_seed, tmpl.region_id));
    std::int64_t population;
    if (tmpl.population) {
      population = *tmpl.population;
      if (population < 0) {
        throw ValidationError("region '" + tmpl.region_id + "' declares a negative population");
      }
    } else {
      population = kMinPopulation + static_cast<std::int64_t>(uniform_below(
                                        rng, kMaxPopulation - kMinPopulation + 1));
    }

    InitialRegion region;
    region.region_id = tmpl.region_id;
    region.location = tmpl.location;
    region.population = population;

    const auto& distributions = spec.strata().at(tmpl.stratum);
    for (std::int64_t n = 0; n < population; ++n) {
      Record record;
      record.record_id = tmpl.region_id + "-" + std::to_string(n);
      record.region_id = tmpl.region_id;
      record.values.reserve(schema.attribute_count());
      for (const Attribute& attr : schema.attributes()) {
        const std::size_t category = sample_category(rng, distributions.at(attr.name));
        record.values.push_back(attr.domain[category]);
      }
      region.class_table.add(record.values);
      data.records.push_back(std::move(record));
    }
    data.regions.push_back(std::move(region));
  }
  return data;
}

}  // namespace voranon
