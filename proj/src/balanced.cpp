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

#include "voranon/balanced.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "voranon/model.hpp"

namespace voranon {

namespace {

std::int64_t round_to_nearest(double value) {
  return static_cast<std::int64_t>(std::llround(value));
}

// Walks `points[start..]` until the accumulated population reaches `ideal`,
// then keeps or defers the boundary point by whichever sum is closer to the
// ideal (ties keep it). A row never ends empty: its first point is always
// kept. Returns one past the last index taken.
std::size_t walk_group(const std::vector<WeightedPoint>& points, std::size_t start,
                       std::int64_t ideal, std::int64_t* population_out) {
  std::size_t i = start;
  std::int64_t sum = 0;
  while (i < points.size() && sum < ideal) {
    sum += points[i].population;
    ++i;
  }
  if (sum >= ideal && i > start + 1) {
    const std::int64_t with_last = sum;
    const std::int64_t without_last = sum - points[i - 1].population;
    if (with_last - ideal > ideal - without_last) {
      --i;
      sum = without_last;
    }
  }
  *population_out = sum;
  return i;
}

}  // namespace

int initial_row_count(int site_count) {
  if (site_count < 1) {
    throw ValidationError("row count needs at least one site");
  }
  const auto rows = round_to_nearest(std::sqrt(static_cast<double>(site_count)));
  return static_cast<int>(std::max<std::int64_t>(1, rows));
}

RowPartition partition_rows(std::vector<WeightedPoint> points, int site_count) {
  if (points.empty()) {
    throw ValidationError("row partition of an empty point set");
  }
  RowPartition partition;
  for (const WeightedPoint& p : points) {
    if (p.population < 0) {
      throw ValidationError("row partition: negative population for region '" + p.region_id + "'");
    }
    partition.total_population += p.population;
  }
  if (partition.total_population <= 0) {
    throw ValidationError("row partition needs a positive total population");
  }

  std::sort(points.begin(), points.end(), [](const WeightedPoint& a, const WeightedPoint& b) {
    return std::tie(a.location.y, a.location.x, a.region_id) <
           std::tie(b.location.y, b.location.x, b.region_id);
  });

  const int rows = initial_row_count(site_count);
  partition.ideal_row_population = std::max<std::int64_t>(
      1, round_to_nearest(static_cast<double>(partition.total_population) / rows));

  // One uncapped walk covers both adjustments: running short of population
  // simply yields fewer rows, and an overweight tail keeps being split into
  // further rows of the same ideal population.
  std::size_t i = 0;
  while (i < points.size()) {
    std::int64_t row_population = 0;
    const std::size_t end = walk_group(points, i, partition.ideal_row_population, &row_population);
    std::vector<WeightedPoint> row(points.begin() + static_cast<std::ptrdiff_t>(i),
                                   points.begin() + static_cast<std::ptrdiff_t>(end));
    std::sort(row.begin(), row.end(), [](const WeightedPoint& a, const WeightedPoint& b) {
      return std::tie(a.location.x, a.location.y, a.region_id) <
             std::tie(b.location.x, b.location.y, b.region_id);
    });
    partition.rows.push_back(std::move(row));
    partition.row_populations.push_back(row_population);
    i = end;
  }
  return partition;
}

CellPartition partition_cells(const RowPartition& rows, int site_count) {
  const std::size_t row_count = rows.rows.size();
  if (row_count == 0) {
    throw ValidationError("cell partition of an empty row partition");
  }
  std::size_t total_points = 0;
  for (const auto& row : rows.rows) total_points += row.size();
  if (site_count < 1 || static_cast<std::size_t>(site_count) > total_points) {
    throw ValidationError("cell partition: site count must be in [1, point count]");
  }
  if (static_cast<std::size_t>(site_count) < row_count) {
    throw ValidationError("cell partition: fewer sites than rows");
  }

  // Per-row counts from the population share, clamped to [1, points in row].
  std::vector<double> exact(row_count);
  std::vector<std::int64_t> counts(row_count);
  std::int64_t assigned = 0;
  for (std::size_t r = 0; r < row_count; ++r) {
    const double share =
        static_cast<double>(rows.row_populations[r]) / static_cast<double>(rows.total_population);
    exact[r] = static_cast<double>(site_count) * share;
    counts[r] = std::clamp<std::int64_t>(round_to_nearest(exact[r]), 1,
                                         static_cast<std::int64_t>(rows.rows[r].size()));
    assigned += counts[r];
  }

  // Reconcile the rounding residue one cell at a time, moving toward the
  // rows whose exact share is farthest from their integer count.
  while (assigned != site_count) {
    if (assigned < site_count) {
      std::size_t pick = row_count;
      double best_residue = -std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < row_count; ++r) {
        if (counts[r] >= static_cast<std::int64_t>(rows.rows[r].size())) continue;
        const double residue = exact[r] - static_cast<double>(counts[r]);
        if (residue > best_residue) {
          best_residue = residue;
          pick = r;
        }
      }
      if (pick == row_count) {
        throw ValidationError("cell partition: cannot reach the requested cell count");
      }
      ++counts[pick];
      ++assigned;
    } else {
      std::size_t pick = row_count;
      double best_residue = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < row_count; ++r) {
        if (counts[r] <= 1) continue;
        const double residue = exact[r] - static_cast<double>(counts[r]);
        if (residue < best_residue) {
          best_residue = residue;
          pick = r;
        }
      }
      if (pick == row_count) {
        throw ValidationError("cell partition: cannot reduce to the requested cell count");
      }
      --counts[pick];
      --assigned;
    }
  }

  CellPartition partition;
  for (std::size_t r = 0; r < row_count; ++r) {
    const auto& row = rows.rows[r];
    const auto cells_wanted = static_cast<std::size_t>(counts[r]);
    const std::int64_t ideal_cell = std::max<std::int64_t>(
        1, round_to_nearest(static_cast<double>(rows.row_populations[r]) /
                            static_cast<double>(cells_wanted)));

    std::vector<std::vector<WeightedPoint>> cells;
    std::int64_t remaining = rows.row_populations[r];
    std::size_t i = 0;
    while (cells.size() < cells_wanted && i < row.size()) {
      // The last cell, and any cell whose remaining population falls short
      // of the ideal, absorbs everything left in the row.
      if (cells.size() + 1 == cells_wanted || remaining < ideal_cell) {
        cells.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(i), row.end());
        i = row.size();
        break;
      }
      std::int64_t cell_population = 0;
      const std::size_t end = walk_group(row, i, ideal_cell, &cell_population);
      cells.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(i),
                         row.begin() + static_cast<std::ptrdiff_t>(end));
      remaining -= cell_population;
      i = end;
    }

    // Deficit: halve the most populous splittable cell at its population
    // midpoint until the count is met.
    while (cells.size() < cells_wanted) {
      std::size_t pick = cells.size();
      std::int64_t best_population = -1;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].size() < 2) continue;
        std::int64_t population = 0;
        for (const WeightedPoint& p : cells[c]) population += p.population;
        if (population > best_population) {
          best_population = population;
          pick = c;
        }
      }
      if (pick == cells.size()) {
        throw ValidationError("cell partition: no cell left to split");
      }
      auto& cell = cells[pick];
      std::size_t split = 1;
      if (best_population > 0) {
        std::int64_t cumulative = 0;
        for (std::size_t j = 0; j < cell.size(); ++j) {
          cumulative += cell[j].population;
          if (2 * cumulative >= best_population) {
            split = j + 1;
            break;
          }
        }
      } else {
        split = cell.size() / 2;
      }
      split = std::clamp<std::size_t>(split, 1, cell.size() - 1);
      std::vector<WeightedPoint> tail(cell.begin() + static_cast<std::ptrdiff_t>(split),
                                      cell.end());
      cell.resize(split);
      cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(pick) + 1, std::move(tail));
    }
    for (auto& cell : cells) partition.cells.push_back(std::move(cell));
  }
  return partition;
}

std::vector<Point> place_sites(const CellPartition& cells) {
  std::vector<Point> sites;
  sites.reserve(cells.cells.size());
  for (const auto& cell : cells.cells) {
    if (cell.empty()) {
      throw ValidationError("site placement over an empty cell");
    }
    Point mean;
    for (const WeightedPoint& p : cell) {
      mean.x += p.location.x;
      mean.y += p.location.y;
    }
    mean.x /= static_cast<double>(cell.size());
    mean.y /= static_cast<double>(cell.size());
    sites.push_back(mean);
  }
  return sites;
}

CellPartition balanced_cells(std::vector<WeightedPoint> points, int site_count) {
  if (site_count < 1 || static_cast<std::size_t>(site_count) > points.size()) {
    throw ValidationError("balanced placement: site count must be in [1, point count]");
  }
  RowPartition rows = partition_rows(std::move(points), site_count);

  // The walk can produce more rows than sites when single points dwarf the
  // ideal row population; fold the lightest rows into a neighbor until each
  // row can hold at least one cell.
  while (rows.rows.size() > static_cast<std::size_t>(site_count)) {
    std::size_t lightest = 0;
    for (std::size_t r = 1; r < rows.rows.size(); ++r) {
      if (rows.row_populations[r] < rows.row_populations[lightest]) lightest = r;
    }
    const std::size_t target = lightest == 0 ? 1 : lightest - 1;
    auto& into = rows.rows[target];
    auto& from = rows.rows[lightest];
    into.insert(into.end(), from.begin(), from.end());
    std::sort(into.begin(), into.end(), [](const WeightedPoint& a, const WeightedPoint& b) {
      return std::tie(a.location.x, a.location.y, a.region_id) <
             std::tie(b.location.x, b.location.y, b.region_id);
    });
    rows.row_populations[target] += rows.row_populations[lightest];
    rows.rows.erase(rows.rows.begin() + static_cast<std::ptrdiff_t>(lightest));
    rows.row_populations.erase(rows.row_populations.begin() +
                               static_cast<std::ptrdiff_t>(lightest));
  }

  return partition_cells(rows, site_count);
}

std::vector<Point> balanced_sites(std::vector<WeightedPoint> points, int site_count) {
  return place_sites(balanced_cells(std::move(points), site_count));
}

}  // namespace voranon
