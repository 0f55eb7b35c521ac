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

#include <map>
#include <string>
#include <vector>

#include "voranon/aggregate.hpp"
#include "voranon/io.hpp"
#include "voranon/metrics.hpp"
#include "voranon/site_count.hpp"

namespace voranon {

/// Wraps an error with the pipeline stage it came from, so a failed run's
/// manifest can report where it stopped.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message)
      : std::runtime_error(message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Run log emitted on every run, success or failure. Replaying the run
/// needs only the inputs, the echoed config, and the seed; the timings are
/// wall clock and the one part of a run that is not reproducible.
struct RunManifest {
  std::string verb;
  std::string config_json;
  std::map<std::string, std::string> input_digests;  // file name -> digest
  std::vector<std::string> output_files;
  std::vector<std::string> warnings;
  StageTimings timings;
  bool success = false;
  std::string failed_stage;
  std::string error;
};

std::string manifest_to_json(const RunManifest& manifest);

struct PipelineOutput {
  SiteCountResult site_count;
  AggregationResult result;
  MetricsReport metrics;
  std::vector<std::string> warnings;
};

/// Site count -> placement -> aggregation -> metrics, with wall-clock
/// timings per stage. Throws ValidationError on bad inputs; the caller owns
/// manifest assembly for failures.
PipelineOutput run_pipeline(const PipelineConfig& config, const Dataset& dataset);

/// Deterministic JSON report: configuration echo, the five measurements,
/// and one row per aggregated region.
std::string report_to_json(const PipelineConfig& config, const PipelineOutput& output);

}  // namespace voranon
