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
#include <string>
#include <vector>

#include "voranon/geometry.hpp"
#include "voranon/model.hpp"

namespace voranon {

/// Per-stratum sampling distributions: stratum name -> attribute name ->
/// probability per category, in domain order.
class DistributionSpec {
 public:
  using AttributeDistributions = std::map<std::string, std::vector<double>>;

  DistributionSpec() = default;
  explicit DistributionSpec(std::map<std::string, AttributeDistributions> strata);

  const std::map<std::string, AttributeDistributions>& strata() const { return strata_; }
  bool has_stratum(const std::string& name) const { return strata_.count(name) > 0; }

  /// Every stratum must carry a probability vector for every schema
  /// attribute, matching the domain size, non-negative, summing to 1
  /// within 1e-9.
  void validate(const Schema& schema) const;

 private:
  std::map<std::string, AttributeDistributions> strata_;
};

struct RegionTemplate {
  std::string region_id;
  Point location;
  std::string stratum;
  std::optional<std::int64_t> population;  // drawn uniformly from [400, 700] when absent
};

struct GeneratedData {
  std::vector<InitialRegion> regions;
  std::vector<Record> records;
};

/// Derives the per-region substream seed from the run seed and region id,
/// so regions can be generated independently yet reproducibly.
std::uint64_t region_stream_seed(std::uint64_t run_seed, const std::string& region_id);

/// Populates each template region with stratified categorical records:
/// populations default to a uniform draw from [400, 700], and every
/// attribute value is sampled independently from the stratum's
/// distribution. Deterministic in (templates, spec, schema, seed).
GeneratedData generate(std::span<const RegionTemplate> templates, const DistributionSpec& spec,
                       const Schema& schema, std::uint64_t rng_seed);

}  // namespace voranon
