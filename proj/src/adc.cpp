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

#include "voranon/adc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace voranon {

namespace {

void recompute_levels(ClusterState& state) {
  const std::size_t clusters = state.centers.size();
  state.min_cardinality.assign(clusters, -1);
  for (std::size_t c = 0; c < clusters; ++c) {
    if (!state.cluster_tables[c].empty()) {
      state.min_cardinality[c] = state.cluster_tables[c].min_cardinality();
    }
  }
  state.global_anonymity = std::numeric_limits<std::int64_t>::max();
  bool any = false;
  for (std::size_t c = 0; c < clusters; ++c) {
    if (state.min_cardinality[c] >= 0) {
      state.global_anonymity = std::min(state.global_anonymity, state.min_cardinality[c]);
      any = true;
    }
  }
  if (!any) state.global_anonymity = 0;
  state.lowest_clusters.clear();
  for (std::size_t c = 0; c < clusters; ++c) {
    if (state.min_cardinality[c] == state.global_anonymity) {
      state.lowest_clusters.push_back(c);
    }
  }
}

void assign_and_merge(ClusterState& state, std::span<const InitialRegion> regions) {
  const std::size_t clusters = state.centers.size();
  state.assignment.resize(regions.size());
  state.cluster_tables.assign(clusters, ClassTable{});
  for (std::size_t r = 0; r < regions.size(); ++r) {
    const std::size_t c = nearest_point_index(regions[r].location, state.centers);
    state.assignment[r] = c;
    for (const auto& [key, count] : regions[r].class_table.entries()) {
      state.cluster_tables[c].add(key, count);
    }
  }
  recompute_levels(state);
}

}  // namespace

ClusterState make_cluster_state(std::span<const InitialRegion> regions,
                                std::vector<Point> centers) {
  if (centers.empty()) {
    throw ValidationError("cluster state needs at least one center");
  }
  if (regions.empty()) {
    throw ValidationError("cluster state needs at least one region");
  }
  ClusterState state;
  state.centers = std::move(centers);
  assign_and_merge(state, regions);
  return state;
}

std::int64_t adc_objective(const ClusterState& state) {
  return state.global_anonymity * static_cast<std::int64_t>(state.centers.size()) -
         static_cast<std::int64_t>(state.lowest_clusters.size());
}

std::vector<BottleneckClass> bottleneck_classes(const ClusterState& state, std::size_t cluster) {
  std::vector<BottleneckClass> result;
  const ClassTable& table = state.cluster_tables[cluster];
  if (table.empty()) return result;
  const std::int64_t lowest = state.min_cardinality[cluster];
  for (const auto& [key, count] : table.entries()) {
    if (count == lowest) {
      result.push_back(BottleneckClass{cluster, key, count});
    }
  }
  return result;
}

std::optional<Point> propose_move(std::span<const InitialRegion> regions,
                                  const BottleneckClass& bottleneck,
                                  const VoronoiDiagram& diagram,
                                  std::span<const std::size_t> cluster_to_site) {
  const NeighborhoodPolygon neighborhood =
      diagram.neighborhood(cluster_to_site[bottleneck.cluster]);

  double weight_sum = 0.0;
  double x_sum = 0.0;
  double y_sum = 0.0;
  for (const InitialRegion& region : regions) {
    const auto it = region.class_table.entries().find(bottleneck.key);
    if (it == region.class_table.entries().end()) continue;
    if (!neighborhood.contains(region.location)) continue;
    const auto weight = static_cast<double>(it->second);
    weight_sum += weight;
    x_sum += region.location.x * weight;
    y_sum += region.location.y * weight;
  }
  if (weight_sum <= 0.0) return std::nullopt;
  return Point{x_sum / weight_sum, y_sum / weight_sum};
}

bool commit_if_improving(ClusterState& state, std::span<const InitialRegion> regions,
                         std::size_t cluster, const Point& candidate) {
  if (!std::isfinite(candidate.x) || !std::isfinite(candidate.y)) return false;
  const std::int64_t before = adc_objective(state);

  ClusterState trial;
  trial.centers = state.centers;
  trial.centers[cluster] = candidate;
  assign_and_merge(trial, regions);

  if (adc_objective(trial) <= before) return false;
  state = std::move(trial);
  return true;
}

namespace {

// Diagram over the distinct centers plus the cluster -> site mapping.
// Deduplicating here keeps transiently co-located centers legal; their
// higher-indexed clusters are empty and never optimized.
struct ScanGeometry {
  std::optional<VoronoiDiagram> diagram;
  std::vector<std::size_t> cluster_to_site;
};

ScanGeometry build_scan_geometry(const std::vector<Point>& centers, const Rect& extent) {
  ScanGeometry geometry;
  std::vector<Point> unique;
  geometry.cluster_to_site.resize(centers.size());
  for (std::size_t c = 0; c < centers.size(); ++c) {
    std::size_t found = unique.size();
    for (std::size_t u = 0; u < unique.size(); ++u) {
      if (unique[u] == centers[c]) {
        found = u;
        break;
      }
    }
    if (found == unique.size()) unique.push_back(centers[c]);
    geometry.cluster_to_site[c] = found;
  }
  geometry.diagram = VoronoiDiagram::build(unique, extent);
  return geometry;
}

}  // namespace

AdcResult run_adc(std::vector<Point> seed_centers, std::span<const InitialRegion> regions,
                  const AdcParams& params, const Rect& extent,
                  std::vector<std::vector<Point>>* center_trace) {
  ClusterState state = make_cluster_state(regions, std::move(seed_centers));
  if (center_trace != nullptr) center_trace->push_back(state.centers);

  AdcResult result;
  const auto sufficient = static_cast<std::int64_t>(params.k);

  auto all_sufficient = [&]() {
    for (std::size_t c = 0; c < state.centers.size(); ++c) {
      if (state.min_cardinality[c] >= 0 && state.min_cardinality[c] < sufficient) return false;
    }
    return true;
  };

  while (!result.move_cap_hit && !all_sufficient()) {
    ScanGeometry geometry = build_scan_geometry(state.centers, extent);

    bool committed_this_scan = false;
    bool restart = false;
    const std::vector<std::size_t> lows = state.lowest_clusters;
    for (std::size_t c : lows) {
      // Earlier commits in this scan may have lifted the cluster already.
      if (state.min_cardinality[c] != state.global_anonymity) continue;
      const std::int64_t local_before = state.min_cardinality[c];
      const std::vector<BottleneckClass> bottlenecks = bottleneck_classes(state, c);
      for (const BottleneckClass& bottleneck : bottlenecks) {
        if (result.committed_moves >= params.max_committed_moves) {
          result.move_cap_hit = true;
          break;
        }
        const std::optional<Point> candidate = propose_move(
            regions, bottleneck, *geometry.diagram, geometry.cluster_to_site);
        if (!candidate) continue;
        if (commit_if_improving(state, regions, c, *candidate)) {
          ++result.committed_moves;
          committed_this_scan = true;
          if (center_trace != nullptr) center_trace->push_back(state.centers);
          if (state.cluster_tables[c].empty() || state.min_cardinality[c] > local_before) {
            restart = true;
            break;
          }
          geometry = build_scan_geometry(state.centers, extent);
        }
      }
      if (restart || result.move_cap_hit) break;
    }

    if (!committed_this_scan && !restart) break;  // converged: nothing to commit
  }

  result.centers = state.centers;
  result.final_objective = adc_objective(state);
  result.final_anonymity = state.global_anonymity;
  return result;
}

}  // namespace voranon
