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
#include <optional>
#include <span>
#include <vector>

#include "voranon/geometry.hpp"
#include "voranon/model.hpp"

namespace voranon {

/// Clusters implied by a center list: every region belongs to its nearest
/// center (ties to the lowest cluster index), mirroring how a Voronoi
/// diagram over the same centers would group the points.
struct ClusterState {
  std::vector<Point> centers;
  std::vector<std::size_t> assignment;          // region index -> cluster index
  std::vector<ClassTable> cluster_tables;       // merged member tables
  std::vector<std::int64_t> min_cardinality;    // -1 for clusters with empty tables
  std::int64_t global_anonymity = 0;            // min cardinality over non-empty clusters
  std::vector<std::size_t> lowest_clusters;     // clusters sitting at the global level
};

/// A class capping its cluster's anonymity level.
struct BottleneckClass {
  std::size_t cluster = 0;
  ClassKey key;
  std::int64_t cardinality = 0;
};

ClusterState make_cluster_state(std::span<const InitialRegion> regions,
                                std::vector<Point> centers);

/// alpha * cluster_count - |clusters at alpha|. Strictly higher is better;
/// raising the global level always dominates the second term.
std::int64_t adc_objective(const ClusterState& state);

/// Bottleneck classes of one cluster in lexicographic key order.
std::vector<BottleneckClass> bottleneck_classes(const ClusterState& state, std::size_t cluster);

/// Candidate center: the mean of the region points inside the cluster's
/// neighborhood that hold members of the bottleneck class, each weighted by
/// its member count. Any region point in the neighborhood qualifies, not
/// just current members of the cluster. Returns nullopt when no point
/// qualifies. `cluster_to_site` maps cluster indices to deduplicated
/// diagram sites.
std::optional<Point> propose_move(std::span<const InitialRegion> regions,
                                  const BottleneckClass& bottleneck,
                                  const VoronoiDiagram& diagram,
                                  std::span<const std::size_t> cluster_to_site);

/// Recomputes the clustering with the moved center and commits it only when
/// the objective strictly increases. Returns whether the move was taken.
bool commit_if_improving(ClusterState& state, std::span<const InitialRegion> regions,
                         std::size_t cluster, const Point& candidate);

struct AdcParams {
  int k = 2;
  int max_committed_moves = 1000;
};

struct AdcResult {
  std::vector<Point> centers;
  int committed_moves = 0;
  bool move_cap_hit = false;
  std::int64_t final_objective = 0;
  std::int64_t final_anonymity = 0;
};

/// Iterative center relocation driven by bottleneck classes. Scans clusters
/// at the lowest anonymity level in ascending index order and their
/// bottleneck classes in key order; a commit that lifts a cluster off the
/// lowest level restarts the scan. Stops when every cluster reaches k, when
/// a full scan commits nothing, or at the move cap.
///
/// `center_trace`, when given, receives the seed centers and the centers
/// after every committed move, so callers can audit the objective sequence.
AdcResult run_adc(std::vector<Point> seed_centers, std::span<const InitialRegion> regions,
                  const AdcParams& params, const Rect& extent,
                  std::vector<std::vector<Point>>* center_trace = nullptr);

}  // namespace voranon
