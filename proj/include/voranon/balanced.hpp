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
#include <string>
#include <vector>

#include "voranon/geometry.hpp"

namespace voranon {

/// An initial-region point carrying its population. The region id only
/// breaks sort ties, keeping the partition deterministic for coincident
/// points.
struct WeightedPoint {
  Point location;
  std::int64_t population = 0;
  std::string region_id;
};

/// Starting row count: round-to-nearest of sqrt(site_count), at least 1.
int initial_row_count(int site_count);

/// Horizontal bands of points with roughly equal populations. Rows are
/// ordered bottom to top; within a row points are sorted by x (ties by y,
/// then region id).
struct RowPartition {
  std::vector<std::vector<WeightedPoint>> rows;
  std::vector<std::int64_t> row_populations;
  std::int64_t total_population = 0;
  std::int64_t ideal_row_population = 0;
};

/// Walks the y-sorted points accumulating toward the ideal row population,
/// keeping or deferring each boundary point by whichever sum lands closer
/// (ties keep the point). Rows that cannot be filled are dropped; an
/// oversized final row is split by continuing the same walk.
RowPartition partition_rows(std::vector<WeightedPoint> points, int site_count);

struct CellPartition {
  std::vector<std::vector<WeightedPoint>> cells;
};

/// Splits each row left-to-right into population-balanced cells so that the
/// total cell count equals site_count exactly. Per-row counts come from the
/// row's population share; rounding residue is reconciled globally one cell
/// at a time. A row that runs out of population mid-walk dumps the
/// remainder into one cell and halves its largest cells until the count is
/// met.
CellPartition partition_cells(const RowPartition& rows, int site_count);

/// One site per cell at the arithmetic mean of the cell's points
/// (unweighted).
std::vector<Point> place_sites(const CellPartition& cells);

/// Rows then cells, with the rows>sites fold-up guard applied. Requires
/// 1 <= site_count <= points.size() and positive total population.
CellPartition balanced_cells(std::vector<WeightedPoint> points, int site_count);

/// Full balanced-density placement: one site per balanced cell.
std::vector<Point> balanced_sites(std::vector<WeightedPoint> points, int site_count);

}  // namespace voranon
