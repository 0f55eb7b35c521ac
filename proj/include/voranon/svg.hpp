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

#include <span>
#include <string>

#include "voranon/aggregate.hpp"
#include "voranon/geometry.hpp"
#include "voranon/model.hpp"

namespace voranon {

/// Static map of an aggregation: initial-region points colored by their
/// aggregated id (color is a pure function of the id), site markers, and
/// optionally the Voronoi cell edges. Output bytes are deterministic.
std::string render_map_svg(std::span<const InitialRegion> regions,
                           const AggregationResult& result,
                           const VoronoiDiagram* diagram = nullptr);

/// Deterministic fill color for an aggregated id, as "#rrggbb".
std::string aggregated_color(int aggregated_id);

}  // namespace voranon
