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

#include "voranon/model.hpp"

namespace voranon {

struct SiteCountResult {
  double model_input_value = 0.0;  // entropy or max-combinations value; 0 for fixed counts
  double cutoff = 0.0;
  int site_count = 0;
};

/// Shannon-style entropy of the equivalence-class size distribution:
/// -sum over class sizes k of t_k * (k/N) * log(k/N), where t_k counts the
/// classes of size k and N is the record total. Classes are taken over the
/// non-geographic quasi-identifiers of the whole data set. Throws on an
/// empty table.
double dataset_entropy(const ClassTable& table, LogBase base = LogBase::Natural);

/// Product of the domain sizes of the non-geographic quasi-identifiers:
/// the number of distinct class keys the schema admits.
double max_combinations(const Schema& schema);

/// Power-law population cutoff: multiplier * value^exponent. Throws when
/// value is not positive.
double gaps_cutoff(double value, const GapsModel& model);

/// Number of aggregated regions implied by using the cutoff as the target
/// average population: round-to-nearest of N/cutoff, clamped to
/// [1, region_count].
int site_count(std::int64_t total_population, double cutoff, int region_count);

/// Runs the configured approach end to end. For the fixed approach the
/// model input and cutoff are reported as zero.
SiteCountResult approximate_site_count(const PipelineConfig& config, const ClassTable& table,
                                       const Schema& schema, std::int64_t total_population,
                                       int region_count);

}  // namespace voranon
