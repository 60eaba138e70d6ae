/*
 * Copyright 2026 The patrolcov Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "patrolcov/path_plan.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <tuple>

#include <fmt/core.h>

namespace patrolcov {

namespace {

constexpr int kMoves[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                              {0, 1},   {1, -1}, {1, 0},  {1, 1}};

double OctileDistance(GridIndex a, GridIndex b) {
  const int dr = std::abs(a.row - b.row);
  const int dc = std::abs(a.col - b.col);
  const int lo = std::min(dr, dc);
  const int hi = std::max(dr, dc);
  return static_cast<double>(hi - lo) + std::numbers::sqrt2 * static_cast<double>(lo);
}

struct OpenEntry {
  double f;
  double g;
  GridIndex cell;
};

// Pops the smallest f; ties prefer the larger g, then the smaller cell.
struct OpenOrder {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    return std::make_tuple(a.f, -a.g, a.cell) > std::make_tuple(b.f, -b.g, b.cell);
  }
};

}  // namespace

NoPathError::NoPathError(GridIndex from, GridIndex to)
    : std::runtime_error(fmt::format("no path from cell {} to cell {}",
                                     ToString(from), ToString(to))),
      from_(from),
      to_(to) {}

StepCounts CountSteps(std::span<const GridIndex> cells) {
  StepCounts counts;
  for (std::size_t i = 1; i < cells.size(); ++i) {
    const int dr = std::abs(cells[i].row - cells[i - 1].row);
    const int dc = std::abs(cells[i].col - cells[i - 1].col);
    if (dr > 1 || dc > 1) {
      throw std::invalid_argument(fmt::format("cells {} and {} are not neighbors",
                                              ToString(cells[i - 1]),
                                              ToString(cells[i])));
    }
    if (dr + dc == 1) {
      ++counts.straight;
    } else if (dr + dc == 2) {
      ++counts.diagonal;
    }
  }
  return counts;
}

OccupancyGrid InflateObstacles(const OccupancyGrid& grid, double radius_m) {
  if (!(radius_m >= 0.0)) {
    throw std::invalid_argument(
        fmt::format("inflation radius must be non-negative, got {}", radius_m));
  }
  const double radius_cells = radius_m / grid.resolution();
  const int reach = static_cast<int>(std::min<double>(
      std::floor(radius_cells + 1e-9), std::max(grid.width(), grid.height())));
  if (reach == 0) return grid;
  const double limit_sq = radius_cells * radius_cells * (1.0 + 1e-12);

  std::vector<GridIndex> disk;
  for (int dr = -reach; dr <= reach; ++dr) {
    for (int dc = -reach; dc <= reach; ++dc) {
      if (static_cast<double>(dr * dr + dc * dc) <= limit_sq) disk.push_back({dr, dc});
    }
  }

  std::vector<CellState> cells(grid.cells().begin(), grid.cells().end());
  for (int row = 0; row < grid.height(); ++row) {
    for (int col = 0; col < grid.width(); ++col) {
      const GridIndex cell{row, col};
      if (grid[cell] == CellState::kFree) continue;
      // The obstacle cell nearest to any Free cell touches free space.
      bool touches_free = false;
      for (const auto& m : kMoves) {
        if (grid.IsFree({row + m[0], col + m[1]})) {
          touches_free = true;
          break;
        }
      }
      if (!touches_free) continue;
      for (GridIndex d : disk) {
        const GridIndex n{row + d.row, col + d.col};
        if (grid.IsFree(n)) cells[grid.Offset(n)] = CellState::kOccupied;
      }
    }
  }
  return OccupancyGrid(grid.width(), grid.height(), grid.resolution(), grid.origin(),
                       std::move(cells));
}

bool CanStep(const OccupancyGrid& grid, GridIndex from, int d_row, int d_col) {
  if (!grid.IsFree({from.row + d_row, from.col + d_col})) return false;
  if (d_row != 0 && d_col != 0) {
    return grid.IsFree({from.row + d_row, from.col}) ||
           grid.IsFree({from.row, from.col + d_col});
  }
  return true;
}

std::vector<GridIndex> AStar(const OccupancyGrid& grid, GridIndex start, GridIndex goal) {
  if (!grid.IsFree(start)) {
    throw std::invalid_argument(fmt::format("start cell {} is not Free", ToString(start)));
  }
  if (!grid.IsFree(goal)) {
    throw std::invalid_argument(fmt::format("goal cell {} is not Free", ToString(goal)));
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<double> g(grid.size(), kInf);
  std::vector<std::size_t> parent(grid.size(), kNone);
  std::vector<std::uint8_t> closed(grid.size(), 0);
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenOrder> open;

  g[grid.Offset(start)] = 0.0;
  open.push({OctileDistance(start, goal), 0.0, start});
  while (!open.empty()) {
    const OpenEntry top = open.top();
    open.pop();
    const std::size_t here = grid.Offset(top.cell);
    if (closed[here]) continue;
    closed[here] = 1;
    if (top.cell == goal) break;

    for (const auto& m : kMoves) {
      if (!CanStep(grid, top.cell, m[0], m[1])) continue;
      const GridIndex next{top.cell.row + m[0], top.cell.col + m[1]};
      const std::size_t there = grid.Offset(next);
      if (closed[there]) continue;
      const double step = (m[0] != 0 && m[1] != 0) ? std::numbers::sqrt2 : 1.0;
      const double cand = top.g + step;
      if (cand < g[there]) {
        g[there] = cand;
        parent[there] = here;
        open.push({cand + OctileDistance(next, goal), cand, next});
      }
    }
  }

  if (!closed[grid.Offset(goal)]) throw NoPathError(start, goal);
  std::vector<GridIndex> path;
  for (std::size_t at = grid.Offset(goal); at != kNone; at = parent[at]) {
    path.push_back(grid.IndexOf(at));
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<std::uint8_t> ReachableMask(const OccupancyGrid& grid, GridIndex start) {
  std::vector<std::uint8_t> mask(grid.size(), 0);
  if (!grid.IsFree(start)) return mask;
  std::deque<GridIndex> queue{start};
  mask[grid.Offset(start)] = 1;
  while (!queue.empty()) {
    const GridIndex cell = queue.front();
    queue.pop_front();
    for (const auto& m : kMoves) {
      if (!CanStep(grid, cell, m[0], m[1])) continue;
      const GridIndex next{cell.row + m[0], cell.col + m[1]};
      std::uint8_t& seen = mask[grid.Offset(next)];
      if (!seen) {
        seen = 1;
        queue.push_back(next);
      }
    }
  }
  return mask;
}

GlobalPath StitchPath(const OccupancyGrid& grid, std::span<const GridIndex> tour) {
  GlobalPath path;
  path.closed = true;
  if (tour.empty()) return path;
  for (GridIndex cell : tour) {
    if (!grid.IsFree(cell)) {
      throw std::invalid_argument(
          fmt::format("waypoint cell {} is not Free", ToString(cell)));
    }
  }
  if (tour.size() == 1) {
    path.cells = {tour.front()};
    path.segment_offsets = {0};
    return path;
  }
  for (std::size_t i = 0; i < tour.size(); ++i) {
    const GridIndex from = tour[i];
    const GridIndex to = tour[(i + 1) % tour.size()];
    auto leg = AStar(grid, from, to);
    if (path.cells.empty()) {
      path.segment_offsets.push_back(0);
      path.cells = std::move(leg);
    } else {
      path.segment_offsets.push_back(path.cells.size() - 1);
      path.cells.insert(path.cells.end(), leg.begin() + 1, leg.end());
    }
  }
  return path;
}

GlobalPath StitchPath(const OccupancyGrid& grid, std::span<const Waypoint> tour) {
  std::vector<GridIndex> cells;
  cells.reserve(tour.size());
  for (const Waypoint& w : tour) cells.push_back(w.pose.cell);
  return StitchPath(grid, cells);
}

}  // namespace patrolcov
