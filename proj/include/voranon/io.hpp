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

#include <filesystem>
#include <string>
#include <vector>

#include "voranon/aggregate.hpp"
#include "voranon/datagen.hpp"
#include "voranon/model.hpp"

namespace voranon {

/// Everything the anonymization pipeline needs, loaded and validated.
struct Dataset {
  Schema schema;
  std::vector<InitialRegion> regions;
  std::vector<Record> records;
};

// Schema file: JSON with "attributes": [{"name", "domain": [...]}, ...] and
// "geographic_attribute".
Schema load_schema(const std::filesystem::path& path);

// Regions file: CSV `region_id,x,y,stratum[,population]`.
std::vector<RegionTemplate> load_region_templates(const std::filesystem::path& path);

// Records file: CSV `record_id,region_id,<attr...>` with attribute columns
// in schema order.
std::vector<Record> load_records(const std::filesystem::path& path, const Schema& schema);

/// Loads and cross-validates the three inputs. Region populations are
/// reconciled with the loaded record counts; a disagreeing declared
/// population is overridden and reported in `warnings`.
Dataset load_inputs(const std::filesystem::path& regions_path,
                    const std::filesystem::path& records_path,
                    const std::filesystem::path& schema_path,
                    std::vector<std::string>* warnings = nullptr);

// Distribution file: JSON with "strata": {name: {attribute: [p, ...]}}.
DistributionSpec load_distribution(const std::filesystem::path& path);

void write_regions_csv(const std::filesystem::path& path,
                       std::span<const InitialRegion> regions,
                       std::span<const RegionTemplate> templates);
void write_records_csv(const std::filesystem::path& path, const Schema& schema,
                       std::span<const Record> records);

/// Published records: the geographic column carries the aggregated id.
void write_published_csv(const std::filesystem::path& path, const Schema& schema,
                         const AggregationResult& result);

/// Sidecar mapping every initial region to its aggregated region.
void write_mapping_csv(const std::filesystem::path& path, const AggregationResult& result);

// Sites file: CSV `aggregated_id,x,y`, one row per deduplicated site.
void write_sites_csv(const std::filesystem::path& path, std::span<const Point> sites);
std::vector<Point> load_sites(const std::filesystem::path& path);

std::map<std::string, int> load_mapping(const std::filesystem::path& path);

/// Reads back a published-records file (original region ids are not in the
/// file and come back empty).
std::vector<PublishedRecord> load_published(const std::filesystem::path& path,
                                            const Schema& schema);

// Config file: JSON mirroring PipelineConfig.
PipelineConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const PipelineConfig& config);

/// FNV-1a 64-bit digest of the file bytes, as 16 hex characters.
std::string file_digest(const std::filesystem::path& path);

std::string to_string(LogBase base);
std::string to_string(SiteCountApproach approach);
std::string to_string(PlacementApproach approach);
std::string to_string(AdcSeedMethod method);

}  // namespace voranon
