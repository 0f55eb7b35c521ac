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

#include <cstddef>
#include <span>
#include <vector>

namespace voranon {

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point& other) const { return x == other.x && y == other.y; }
};

double squared_distance(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);

/// Axis-aligned rectangle, min corner inclusive.
struct Rect {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  bool contains(const Point& p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
};

/// Tight bounding rectangle of a non-empty point set.
Rect bounding_rect(std::span<const Point> points);

/// Rectangle grown by `fraction` of its width/height on each side. A
/// degenerate side falls back to the other side's span, then to 1.0, so the
/// result always has positive area.
Rect expand_rect(const Rect& r, double fraction = 0.1);

using Polygon = std::vector<Point>;

/// Signed shoelace area (positive for counter-clockwise winding).
double polygon_signed_area(const Polygon& poly);
double polygon_area(const Polygon& poly);

/// Area-weighted centroid via the shoelace formula; falls back to the vertex
/// mean for zero-area (collinear) input. Throws ValidationError on fewer
/// than 3 vertices.
Point polygon_centroid(const Polygon& poly);

/// Even-odd test, boundary-inclusive within a small tolerance.
bool point_in_polygon(const Point& p, const Polygon& poly);

/// Union of a cluster's own Voronoi cell and the ring polygon through its
/// adjacent sites. A ring with fewer than 3 vertices is degenerate and
/// contributes nothing to membership.
struct NeighborhoodPolygon {
  Polygon own_cell;
  Polygon adjacent_ring;

  bool contains(const Point& p) const;
};

/// Euclidean Voronoi diagram over deduplicated sites, with every cell
/// clipped to the data extent expanded by 10% per side. Immutable after
/// construction.
class VoronoiDiagram {
 public:
  /// Builds the diagram. Duplicate sites are collapsed to their first
  /// occurrence (counted, not rejected). Throws ValidationError when no
  /// site is given, or when more than one site was requested but all
  /// coincide.
  static VoronoiDiagram build(std::span<const Point> sites, const Rect& extent);

  std::size_t site_count() const { return sites_.size(); }
  const std::vector<Point>& sites() const { return sites_; }
  const Polygon& cell(std::size_t site) const { return cells_[site]; }
  const std::vector<std::size_t>& neighbors(std::size_t site) const { return adjacency_[site]; }
  bool adjacent(std::size_t a, std::size_t b) const;
  const Rect& bounding_box() const { return box_; }

  /// Index of the input site that collapsed to each deduplicated site, and
  /// how many duplicates were dropped.
  const std::vector<std::size_t>& input_to_site() const { return input_to_site_; }
  std::size_t duplicates_collapsed() const { return duplicates_collapsed_; }

  /// Site minimizing Euclidean distance to q; ties break to the lowest
  /// site index. Grid-accelerated.
  std::size_t nearest_site(const Point& q) const;

  NeighborhoodPolygon neighborhood(std::size_t site) const;

 private:
  VoronoiDiagram() = default;
  void build_grid();

  std::vector<Point> sites_;
  std::vector<Polygon> cells_;
  std::vector<std::vector<std::size_t>> adjacency_;
  Rect box_;
  std::vector<std::size_t> input_to_site_;
  std::size_t duplicates_collapsed_ = 0;

  // Uniform bucket grid over box_ for nearest-site queries.
  std::size_t grid_dim_ = 0;
  std::vector<std::vector<std::size_t>> grid_;
};

/// Linear-scan nearest point with the same tie rule as the diagram query
/// (lowest index wins). Used for cluster assignment over raw center lists,
/// which may contain duplicates.
std::size_t nearest_point_index(const Point& q, std::span<const Point> points);

}  // namespace voranon
