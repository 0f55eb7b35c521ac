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
#include <span>

#include "voranon/aggregate.hpp"
#include "voranon/model.hpp"

namespace voranon {

struct StageTimings {
  double site_count_ms = 0.0;
  double placement_ms = 0.0;
  double aggregation_ms = 0.0;
  double metrics_ms = 0.0;
  double total_ms = 0.0;
};

struct MetricsReport {
  std::int64_t suppression_count = 0;
  double suppression_fraction = 0.0;
  double compactness = 0.0;
  double discernibility = 0.0;
  double non_uniform_entropy = 0.0;  // bits
  std::int64_t global_anonymity = 0;
  int site_count = 0;
  StageTimings timings;
};

/// Sum over initial regions of the distance from the region point to its
/// aggregated region's site. Unweighted by population.
double compactness(std::span<const InitialRegion> regions, const AggregationResult& result);

/// Sum of squared cardinalities over the published classes of size >= k,
/// taken per aggregated region. With `classical` set, every suppressed
/// record additionally costs the full data set size.
double discernibility(const AggregationResult& result, int k, bool classical = false);

/// Information loss of the geographic generalization: for each published
/// record, the probability of guessing its original region given its
/// aggregated region, totalled as -sum log2 p. Zero exactly when every
/// aggregated region published records from a single original region.
double non_uniform_entropy(const AggregationResult& result);

/// All measurements over one aggregation. Timings are filled by the caller.
MetricsReport evaluate_metrics(std::span<const InitialRegion> regions,
                               const AggregationResult& result, int k,
                               bool classical_discernibility = false);

}  // namespace voranon
