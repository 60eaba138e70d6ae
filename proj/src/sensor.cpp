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

#include "patrolcov/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

namespace patrolcov {

namespace {

// Absorbs rounding in angle arithmetic so the inclusive cone boundary is
// honored for cells lying exactly on it.
constexpr double kAngleTolerance = 1e-9;

}  // namespace

void SensorModel::Validate() const {
  if (!(fov > 0.0) || fov > kTwoPi + kAngleTolerance) {
    throw std::invalid_argument(
        fmt::format("sensor fov must be in (0, 2pi], got {}", fov));
  }
  if (!(range > 0.0) || !std::isfinite(range)) {
    throw std::invalid_argument(
        fmt::format("sensor range must be positive, got {}", range));
  }
}

double WrapAngle(double angle) {
  double wrapped = std::remainder(angle, kTwoPi);
  if (wrapped <= -std::numbers::pi) wrapped += kTwoPi;
  return wrapped;
}

std::vector<GridIndex> BresenhamLine(GridIndex a, GridIndex b) {
  std::vector<GridIndex> cells;
  cells.reserve(static_cast<std::size_t>(
      std::max(std::abs(b.row - a.row), std::abs(b.col - a.col)) + 1));
  TraceLine(a, b, [&](GridIndex c) {
    cells.push_back(c);
    return true;
  });
  return cells;
}

bool LineOfSight(const OccupancyGrid& grid, GridIndex from, GridIndex to) {
  bool clear = true;
  TraceLine(from, to, [&](GridIndex c) {
    if (c == from || c == to) return true;
    if (!grid.IsFree(c)) {
      clear = false;
      return false;
    }
    return true;
  });
  return clear;
}

bool WithinFov(GridIndex from, GridIndex to, double heading, double fov) {
  if (fov >= kTwoPi - kAngleTolerance || from == to) return true;
  const double alpha = std::atan2(static_cast<double>(to.row - from.row),
                                  static_cast<double>(to.col - from.col));
  return std::abs(WrapAngle(alpha - heading)) <= fov / 2.0 + kAngleTolerance;
}

std::vector<GridIndex> CellsInSight(const OccupancyGrid& grid, GridIndex from,
                                    double range_m) {
  if (!grid.IsFree(from)) {
    throw std::invalid_argument(
        fmt::format("sensor cell {} is not Free", ToString(from)));
  }
  const double range_cells = range_m / grid.resolution();
  const double limit_sq = range_cells * range_cells * (1.0 + 1e-12);
  const int reach = static_cast<int>(std::floor(range_cells + 1e-9));
  const int row_lo = std::max(0, from.row - reach);
  const int row_hi = std::min(grid.height() - 1, from.row + reach);
  const int col_lo = std::max(0, from.col - reach);
  const int col_hi = std::min(grid.width() - 1, from.col + reach);

  std::vector<GridIndex> seen;
  for (int row = row_lo; row <= row_hi; ++row) {
    const double dr = row - from.row;
    for (int col = col_lo; col <= col_hi; ++col) {
      const GridIndex cell{row, col};
      if (grid[cell] != CellState::kFree) continue;
      const double dc = col - from.col;
      if (dr * dr + dc * dc > limit_sq) continue;
      if (LineOfSight(grid, from, cell)) seen.push_back(cell);
    }
  }
  return seen;
}

std::vector<GridIndex> VisibleCells(const OccupancyGrid& grid, const Pose& pose,
                                    const SensorModel& sensor) {
  sensor.Validate();
  std::vector<GridIndex> seen = CellsInSight(grid, pose.cell, sensor.range);
  std::erase_if(seen, [&](GridIndex c) {
    return !WithinFov(pose.cell, c, pose.heading, sensor.fov);
  });
  return seen;
}

}  // namespace patrolcov
