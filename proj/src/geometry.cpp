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

#include "voranon/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "voranon/model.hpp"

namespace voranon {

double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double distance(const Point& a, const Point& b) {
  return std::sqrt(squared_distance(a, b));
}

Rect bounding_rect(std::span<const Point> points) {
  if (points.empty()) {
    throw ValidationError("bounding rect of an empty point set");
  }
  Rect r{points[0].x, points[0].y, points[0].x, points[0].y};
  for (const Point& p : points) {
    r.min_x = std::min(r.min_x, p.x);
    r.min_y = std::min(r.min_y, p.y);
    r.max_x = std::max(r.max_x, p.x);
    r.max_y = std::max(r.max_y, p.y);
  }
  return r;
}

Rect expand_rect(const Rect& r, double fraction) {
  double pad_x = r.width() * fraction;
  double pad_y = r.height() * fraction;
  if (pad_x <= 0.0 && pad_y <= 0.0) {
    pad_x = pad_y = 1.0;
  } else if (pad_x <= 0.0) {
    pad_x = pad_y;
  } else if (pad_y <= 0.0) {
    pad_y = pad_x;
  }
  return Rect{r.min_x - pad_x, r.min_y - pad_y, r.max_x + pad_x, r.max_y + pad_y};
}

double polygon_signed_area(const Polygon& poly) {
  double twice_area = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    twice_area += a.x * b.y - b.x * a.y;
  }
  return twice_area / 2.0;
}

double polygon_area(const Polygon& poly) { return std::abs(polygon_signed_area(poly)); }

namespace {

double coordinate_scale(const Polygon& poly) {
  double scale = 1.0;
  for (const Point& p : poly) {
    scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  }
  return scale;
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  const double abx = b.x - a.x;
  const double aby = b.y - a.y;
  const double len2 = abx * abx + aby * aby;
  if (len2 == 0.0) return distance(p, a);
  double t = ((p.x - a.x) * abx + (p.y - a.y) * aby) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, Point{a.x + t * abx, a.y + t * aby});
}

}  // namespace

Point polygon_centroid(const Polygon& poly) {
  if (poly.size() < 3) {
    throw ValidationError("polygon centroid needs at least 3 vertices");
  }
  const double scale = coordinate_scale(poly);
  const double area_eps = 1e-12 * scale * scale;
  const double twice_area = 2.0 * polygon_signed_area(poly);
  if (std::abs(twice_area) <= area_eps) {
    Point mean;
    for (const Point& p : poly) {
      mean.x += p.x;
      mean.y += p.y;
    }
    mean.x /= static_cast<double>(poly.size());
    mean.y /= static_cast<double>(poly.size());
    return mean;
  }
  double cx = 0.0, cy = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    const double cross = a.x * b.y - b.x * a.y;
    cx += (a.x + b.x) * cross;
    cy += (a.y + b.y) * cross;
  }
  return Point{cx / (3.0 * twice_area), cy / (3.0 * twice_area)};
}

bool point_in_polygon(const Point& p, const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  const double eps = 1e-9 * coordinate_scale(poly);
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, poly[i], poly[(i + 1) % n]) <= eps) return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = poly[i];
    const Point& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

bool NeighborhoodPolygon::contains(const Point& p) const {
  if (point_in_polygon(p, own_cell)) return true;
  return adjacent_ring.size() >= 3 && point_in_polygon(p, adjacent_ring);
}

namespace {

// Convex polygon whose edges remember where they came from: edge i runs from
// verts[i] to verts[i+1 mod n]. Labels >= 0 name the neighboring site whose
// bisector produced the edge; negative labels are clipping-box sides.
struct LabeledPolygon {
  std::vector<Point> verts;
  std::vector<int> labels;
};

constexpr int kBoxBottom = -1;
constexpr int kBoxRight = -2;
constexpr int kBoxTop = -3;
constexpr int kBoxLeft = -4;

LabeledPolygon box_polygon(const Rect& box) {
  LabeledPolygon poly;
  poly.verts = {{box.min_x, box.min_y},
                {box.max_x, box.min_y},
                {box.max_x, box.max_y},
                {box.min_x, box.max_y}};
  poly.labels = {kBoxBottom, kBoxRight, kBoxTop, kBoxLeft};
  return poly;
}

// Keeps the side where f(p) <= 0. Returns true when the polygon changed.
// f must be affine, so the kept region stays convex and the cut is a single
// segment, which receives new_label.
bool clip_half_plane(LabeledPolygon& poly, const Point& mid, const Point& dir, int new_label) {
  const std::size_t n = poly.verts.size();
  if (n == 0) return false;

  auto f = [&](const Point& p) { return (p.x - mid.x) * dir.x + (p.y - mid.y) * dir.y; };

  std::vector<double> values(n);
  bool any_out = false;
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = f(poly.verts[i]);
    any_out = any_out || values[i] > 0.0;
  }
  if (!any_out) return false;

  std::vector<Point> verts;
  std::vector<int> incoming;  // incoming[i]: label of the edge arriving at verts[i]
  verts.reserve(n + 2);
  incoming.reserve(n + 2);

  auto intersect = [&](std::size_t i, std::size_t j) {
    const double t = values[i] / (values[i] - values[j]);
    const Point& a = poly.verts[i];
    const Point& b = poly.verts[j];
    return Point{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
  };

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const bool a_in = values[i] <= 0.0;
    const bool b_in = values[j] <= 0.0;
    if (a_in && b_in) {
      verts.push_back(poly.verts[j]);
      incoming.push_back(poly.labels[i]);
    } else if (a_in && !b_in) {
      verts.push_back(intersect(i, j));
      incoming.push_back(poly.labels[i]);
    } else if (!a_in && b_in) {
      verts.push_back(intersect(i, j));
      incoming.push_back(new_label);
      verts.push_back(poly.verts[j]);
      incoming.push_back(poly.labels[i]);
    }
  }

  poly.verts = std::move(verts);
  poly.labels.assign(poly.verts.size(), new_label);
  for (std::size_t i = 0; i < poly.verts.size(); ++i) {
    poly.labels[i] = incoming[(i + 1) % poly.verts.size()];
  }
  return true;
}

}  // namespace

VoronoiDiagram VoronoiDiagram::build(std::span<const Point> sites, const Rect& extent) {
  if (sites.empty()) {
    throw ValidationError("voronoi: at least one site is required");
  }
  for (const Point& s : sites) {
    if (!std::isfinite(s.x) || !std::isfinite(s.y)) {
      throw ValidationError("voronoi: site coordinates must be finite");
    }
  }

  VoronoiDiagram diagram;
  diagram.input_to_site_.resize(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    std::size_t found = diagram.sites_.size();
    for (std::size_t u = 0; u < diagram.sites_.size(); ++u) {
      if (diagram.sites_[u] == sites[i]) {
        found = u;
        break;
      }
    }
    if (found == diagram.sites_.size()) {
      diagram.sites_.push_back(sites[i]);
    } else {
      ++diagram.duplicates_collapsed_;
    }
    diagram.input_to_site_[i] = found;
  }
  if (diagram.sites_.size() == 1 && sites.size() > 1) {
    throw ValidationError("voronoi: all sites coincide");
  }

  diagram.box_ = expand_rect(extent, 0.1);
  const std::size_t n = diagram.sites_.size();
  diagram.cells_.resize(n);
  diagram.adjacency_.assign(n, {});

  const double diag = std::hypot(diagram.box_.width(), diagram.box_.height());
  const double edge_eps = 1e-9 * diag;

  std::vector<std::size_t> order(n);
  std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));

  for (std::size_t i = 0; i < n; ++i) {
    const Point& si = diagram.sites_[i];
    LabeledPolygon cell = box_polygon(diagram.box_);

    // Clip against bisectors, nearest sites first; a bisector at distance
    // d/2 beyond every current vertex cannot cut the cell, so the sorted
    // sweep can stop early.
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double da = squared_distance(si, diagram.sites_[a]);
      const double db = squared_distance(si, diagram.sites_[b]);
      return da != db ? da < db : a < b;
    });

    double max_r2 = 0.0;
    for (const Point& v : cell.verts) max_r2 = std::max(max_r2, squared_distance(si, v));

    for (std::size_t idx : order) {
      if (idx == i) continue;
      const Point& sj = diagram.sites_[idx];
      if (squared_distance(si, sj) / 4.0 > max_r2) break;
      const Point mid{(si.x + sj.x) / 2.0, (si.y + sj.y) / 2.0};
      const Point dir{sj.x - si.x, sj.y - si.y};
      if (clip_half_plane(cell, mid, dir, static_cast<int>(idx))) {
        max_r2 = 0.0;
        for (const Point& v : cell.verts) max_r2 = std::max(max_r2, squared_distance(si, v));
      }
    }

    for (std::size_t e = 0; e < cell.verts.size(); ++e) {
      const int label = cell.labels[e];
      if (label < 0) continue;
      const Point& a = cell.verts[e];
      const Point& b = cell.verts[(e + 1) % cell.verts.size()];
      if (distance(a, b) > edge_eps) {
        adjacent[i][static_cast<std::size_t>(label)] = true;
      }
    }
    diagram.cells_[i] = std::move(cell.verts);
  }

  // Union keeps the relation symmetric when a shared edge degenerates to a
  // point on one side only.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (adjacent[i][j] || adjacent[j][i]) {
        diagram.adjacency_[i].push_back(j);
        diagram.adjacency_[j].push_back(i);
      }
    }
  }
  for (auto& list : diagram.adjacency_) std::sort(list.begin(), list.end());

  diagram.build_grid();
  return diagram;
}

bool VoronoiDiagram::adjacent(std::size_t a, std::size_t b) const {
  const auto& list = adjacency_[a];
  return std::binary_search(list.begin(), list.end(), b);
}

void VoronoiDiagram::build_grid() {
  grid_dim_ = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::sqrt(static_cast<double>(sites_.size()))));
  grid_.assign(grid_dim_ * grid_dim_, {});
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    const auto gx = static_cast<std::size_t>(std::clamp(
        (sites_[i].x - box_.min_x) / box_.width() * static_cast<double>(grid_dim_), 0.0,
        static_cast<double>(grid_dim_ - 1)));
    const auto gy = static_cast<std::size_t>(std::clamp(
        (sites_[i].y - box_.min_y) / box_.height() * static_cast<double>(grid_dim_), 0.0,
        static_cast<double>(grid_dim_ - 1)));
    grid_[gy * grid_dim_ + gx].push_back(i);
  }
}

std::size_t VoronoiDiagram::nearest_site(const Point& q) const {
  const auto dim = static_cast<long>(grid_dim_);
  const auto qx = static_cast<long>(std::clamp(
      (q.x - box_.min_x) / box_.width() * static_cast<double>(dim), 0.0,
      static_cast<double>(dim - 1)));
  const auto qy = static_cast<long>(std::clamp(
      (q.y - box_.min_y) / box_.height() * static_cast<double>(dim), 0.0,
      static_cast<double>(dim - 1)));

  const double bucket_step = std::min(box_.width(), box_.height()) / static_cast<double>(dim);
  std::size_t best = sites_.size();
  double best_d2 = std::numeric_limits<double>::infinity();

  auto scan_bucket = [&](long gx, long gy) {
    if (gx < 0 || gy < 0 || gx >= dim || gy >= dim) return;
    for (std::size_t idx : grid_[static_cast<std::size_t>(gy * dim + gx)]) {
      const double d2 = squared_distance(q, sites_[idx]);
      if (d2 < best_d2 || (d2 == best_d2 && idx < best)) {
        best_d2 = d2;
        best = idx;
      }
    }
  };

  for (long ring = 0; ring <= dim; ++ring) {
    if (best != sites_.size()) {
      // A bucket at Chebyshev ring r lies at least (r-1) full buckets away.
      const double lower_bound = static_cast<double>(ring - 1) * bucket_step;
      if (lower_bound > 0.0 && lower_bound * lower_bound > best_d2) break;
    }
    if (ring == 0) {
      scan_bucket(qx, qy);
      continue;
    }
    for (long gx = qx - ring; gx <= qx + ring; ++gx) {
      scan_bucket(gx, qy - ring);
      scan_bucket(gx, qy + ring);
    }
    for (long gy = qy - ring + 1; gy <= qy + ring - 1; ++gy) {
      scan_bucket(qx - ring, gy);
      scan_bucket(qx + ring, gy);
    }
  }
  return best;
}

NeighborhoodPolygon VoronoiDiagram::neighborhood(std::size_t site) const {
  if (site >= sites_.size()) {
    throw ValidationError("neighborhood: site index out of range");
  }
  NeighborhoodPolygon result;
  result.own_cell = cells_[site];

  const Point& center = sites_[site];
  std::vector<std::size_t> ring = adjacency_[site];
  std::sort(ring.begin(), ring.end(), [&](std::size_t a, std::size_t b) {
    const double angle_a = std::atan2(sites_[a].y - center.y, sites_[a].x - center.x);
    const double angle_b = std::atan2(sites_[b].y - center.y, sites_[b].x - center.x);
    return angle_a != angle_b ? angle_a < angle_b : a < b;
  });
  result.adjacent_ring.reserve(ring.size());
  for (std::size_t idx : ring) result.adjacent_ring.push_back(sites_[idx]);
  return result;
}

std::size_t nearest_point_index(const Point& q, std::span<const Point> points) {
  if (points.empty()) {
    throw ValidationError("nearest point over an empty list");
  }
  std::size_t best = 0;
  double best_d2 = squared_distance(q, points[0]);
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double d2 = squared_distance(q, points[i]);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

}  // namespace voranon
