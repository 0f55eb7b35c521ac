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

#include "voranon/pipeline.hpp"

#include <chrono>
#include <random>

#include <json.hpp>

#include "voranon/adc.hpp"
#include "voranon/balanced.hpp"

namespace voranon {

namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<WeightedPoint> weighted_points(std::span<const InitialRegion> regions) {
  std::vector<WeightedPoint> points;
  points.reserve(regions.size());
  for (const InitialRegion& region : regions) {
    points.push_back(WeightedPoint{region.location, region.population, region.region_id});
  }
  return points;
}

std::vector<Point> random_seeds(std::size_t count, const Rect& extent, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Point> seeds;
  seeds.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    seeds.push_back(Point{extent.min_x + unit() * extent.width(),
                          extent.min_y + unit() * extent.height()});
  }
  return seeds;
}

}  // namespace

PipelineOutput run_pipeline(const PipelineConfig& config, const Dataset& dataset) {
  config.validate(dataset.regions.size());
  if (dataset.regions.empty()) {
    throw ValidationError("pipeline needs at least one region");
  }

  PipelineOutput output;
  const auto run_start = Clock::now();
  const char* stage = "site_count";
  try {
    auto stage_start = Clock::now();
    const ClassTable global_table = build_class_table(dataset.records, dataset.schema);
    std::int64_t total_population = 0;
    for (const InitialRegion& region : dataset.regions) total_population += region.population;
    output.site_count =
        approximate_site_count(config, global_table, dataset.schema, total_population,
                               static_cast<int>(dataset.regions.size()));
    output.metrics.timings.site_count_ms = elapsed_ms(stage_start);

    stage = "placement";
    stage_start = Clock::now();
    std::vector<Point> region_points;
    region_points.reserve(dataset.regions.size());
    for (const InitialRegion& region : dataset.regions) region_points.push_back(region.location);
    const Rect extent = bounding_rect(region_points);

    std::vector<Point> sites;
    const auto site_total = static_cast<std::size_t>(output.site_count.site_count);
    if (config.placement == PlacementApproach::Balanced) {
      sites = balanced_sites(weighted_points(dataset.regions), output.site_count.site_count);
    } else {
      std::vector<Point> seeds =
          config.adc_seed_method == AdcSeedMethod::Balanced
              ? balanced_sites(weighted_points(dataset.regions), output.site_count.site_count)
              : random_seeds(site_total, extent, config.rng_seed);
      AdcParams params{config.k, config.adc_max_committed_moves};
      AdcResult adc = run_adc(std::move(seeds), dataset.regions, params, extent);
      if (adc.move_cap_hit) {
        output.warnings.push_back("clustering stopped at the move cap (" +
                                  std::to_string(adc.committed_moves) + " committed moves)");
      }
      sites = std::move(adc.centers);
    }
    output.metrics.timings.placement_ms = elapsed_ms(stage_start);

    stage = "aggregation";
    stage_start = Clock::now();
    output.result = aggregate(dataset.regions, dataset.records, sites, config.k);
    if (output.result.duplicate_sites_collapsed > 0) {
      output.warnings.push_back(std::to_string(output.result.duplicate_sites_collapsed) +
                                " duplicate site(s) collapsed");
    }
    std::size_t empty_regions = 0;
    for (const AggregatedRegion& region : output.result.regions) {
      if (region.empty) ++empty_regions;
    }
    if (empty_regions > 0) {
      output.warnings.push_back(std::to_string(empty_regions) +
                                " aggregated region(s) are empty");
    }
    output.metrics.timings.aggregation_ms = elapsed_ms(stage_start);

    stage = "metrics";
    stage_start = Clock::now();
    const StageTimings timings = output.metrics.timings;
    output.metrics = evaluate_metrics(dataset.regions, output.result, config.k,
                                      config.classical_discernibility);
    output.metrics.timings = timings;
    output.metrics.timings.metrics_ms = elapsed_ms(stage_start);
    output.metrics.timings.total_ms = elapsed_ms(run_start);
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
  return output;
}

std::string report_to_json(const PipelineConfig& config, const PipelineOutput& output) {
  ordered_json doc;
  doc["k"] = config.k;
  doc["site_count_approach"] = to_string(config.site_count_approach);
  doc["placement"] = to_string(config.placement);
  doc["model_input_value"] = output.site_count.model_input_value;
  doc["cutoff"] = output.site_count.cutoff;
  doc["requested_sites"] = output.site_count.site_count;

  ordered_json metrics;
  metrics["suppression_count"] = output.metrics.suppression_count;
  metrics["suppression_fraction"] = output.metrics.suppression_fraction;
  metrics["compactness"] = output.metrics.compactness;
  metrics["discernibility"] = output.metrics.discernibility;
  metrics["non_uniform_entropy_bits"] = output.metrics.non_uniform_entropy;
  metrics["global_anonymity"] = output.metrics.global_anonymity;
  metrics["site_count"] = output.metrics.site_count;
  doc["metrics"] = metrics;

  ordered_json runtime;
  runtime["site_count_ms"] = output.metrics.timings.site_count_ms;
  runtime["placement_ms"] = output.metrics.timings.placement_ms;
  runtime["aggregation_ms"] = output.metrics.timings.aggregation_ms;
  runtime["metrics_ms"] = output.metrics.timings.metrics_ms;
  runtime["total_ms"] = output.metrics.timings.total_ms;
  doc["runtime_ms"] = runtime;

  ordered_json regions = ordered_json::array();
  for (const AggregatedRegion& region : output.result.regions) {
    std::int64_t published = 0;
    std::int64_t suppressed = 0;
    for (const auto& [key, count] : region.merged_table.entries()) {
      if (count >= config.k) {
        published += count;
      } else {
        suppressed += count;
      }
    }
    ordered_json row;
    row["aggregated_id"] = region.aggregated_id;
    row["site_x"] = region.site.x;
    row["site_y"] = region.site.y;
    row["member_regions"] = region.member_region_ids.size();
    row["published_records"] = published;
    row["suppressed_records"] = suppressed;
    row["anonymity_level"] = region.anonymity_level;
    row["empty"] = region.empty;
    regions.push_back(row);
  }
  doc["aggregated_regions"] = regions;
  return doc.dump(2);
}

std::string manifest_to_json(const RunManifest& manifest) {
  ordered_json doc;
  doc["verb"] = manifest.verb;
  doc["success"] = manifest.success;
  if (!manifest.success) {
    doc["failed_stage"] = manifest.failed_stage;
    doc["error"] = manifest.error;
  }
  doc["config"] =
      manifest.config_json.empty() ? ordered_json() : ordered_json::parse(manifest.config_json);
  ordered_json digests;
  for (const auto& [file, digest] : manifest.input_digests) digests[file] = digest;
  doc["input_digests"] = digests;
  doc["outputs"] = manifest.output_files;
  doc["warnings"] = manifest.warnings;
  ordered_json runtime;
  runtime["site_count_ms"] = manifest.timings.site_count_ms;
  runtime["placement_ms"] = manifest.timings.placement_ms;
  runtime["aggregation_ms"] = manifest.timings.aggregation_ms;
  runtime["metrics_ms"] = manifest.timings.metrics_ms;
  runtime["total_ms"] = manifest.timings.total_ms;
  doc["runtime_ms"] = runtime;
  return doc.dump(2);
}

}  // namespace voranon
