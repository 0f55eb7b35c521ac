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

#include "voranon/site_count.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace voranon {

namespace {

double log_in_base(double value, LogBase base) {
  switch (base) {
    case LogBase::Two:
      return std::log2(value);
    case LogBase::Ten:
      return std::log10(value);
    case LogBase::Natural:
    default:
      return std::log(value);
  }
}

}  // namespace

double dataset_entropy(const ClassTable& table, LogBase base) {
  if (table.empty()) {
    throw ValidationError("entropy of an empty class table");
  }
  // t_k: number of classes of size k.
  std::map<std::int64_t, std::int64_t> size_counts;
  for (const auto& [key, count] : table.entries()) {
    ++size_counts[count];
  }
  const double total = static_cast<double>(table.total());
  double entropy = 0.0;
  for (const auto& [size, classes] : size_counts) {
    const double fraction = static_cast<double>(size) / total;
    entropy -= static_cast<double>(classes) * fraction * log_in_base(fraction, base);
  }
  // A single class of everything yields -1*1*log(1) = -0.0; normalize.
  return entropy == 0.0 ? 0.0 : entropy;
}

double max_combinations(const Schema& schema) {
  double product = 1.0;
  for (const Attribute& attr : schema.attributes()) {
    product *= static_cast<double>(attr.domain.size());
  }
  return product;
}

double gaps_cutoff(double value, const GapsModel& model) {
  if (value <= 0.0) {
    throw ValidationError("cutoff model input must be positive");
  }
  return model.multiplier * std::pow(value, model.exponent);
}

int site_count(std::int64_t total_population, double cutoff, int region_count) {
  if (total_population <= 0) {
    throw ValidationError("site count needs a positive total population");
  }
  if (cutoff <= 0.0) {
    throw ValidationError("site count needs a positive cutoff");
  }
  const double raw = static_cast<double>(total_population) / cutoff;
  auto sites = static_cast<long long>(std::llround(raw));
  sites = std::clamp<long long>(sites, 1, region_count);
  return static_cast<int>(sites);
}

SiteCountResult approximate_site_count(const PipelineConfig& config, const ClassTable& table,
                                       const Schema& schema, std::int64_t total_population,
                                       int region_count) {
  SiteCountResult result;
  switch (config.site_count_approach) {
    case SiteCountApproach::Fixed:
      result.site_count = config.fixed_site_count;
      return result;
    case SiteCountApproach::Entropy:
      result.model_input_value = dataset_entropy(table, config.log_base);
      break;
    case SiteCountApproach::MaxCombs:
      result.model_input_value = max_combinations(schema);
      break;
  }
  result.cutoff = gaps_cutoff(result.model_input_value, config.gaps_model);
  result.site_count = site_count(total_population, result.cutoff, region_count);
  return result;
}

}  // namespace voranon
