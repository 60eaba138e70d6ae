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

#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "patrolcov/grid.hpp"
#include "patrolcov/waypoints.hpp"

namespace patrolcov {

/// Raised when two cells are not connected through Free space.
class NoPathError : public std::runtime_error {
 public:
  NoPathError(GridIndex from, GridIndex to);

  GridIndex from() const { return from_; }
  GridIndex to() const { return to_; }

 private:
  GridIndex from_;
  GridIndex to_;
};

/// Closed loop of grid cells. segment_offsets[k] is the index in `cells`
/// where the leg leaving the k-th tour waypoint starts.
struct GlobalPath {
  std::vector<GridIndex> cells;
  std::vector<std::size_t> segment_offsets;
  bool closed = false;
};

/// Step composition of an 8-connected path; cost = straight + sqrt(2) * diagonal.
struct StepCounts {
  std::int64_t straight = 0;
  std::int64_t diagonal = 0;

  double Cost() const {
    return static_cast<double>(straight) +
           std::numbers::sqrt2 * static_cast<double>(diagonal);
  }
  friend bool operator==(const StepCounts&, const StepCounts&) = default;
};

/// Counts path steps. Throws std::invalid_argument if two consecutive cells
/// are not 8-neighbors (repeated cells count as no step).
StepCounts CountSteps(std::span<const GridIndex> cells);

/// Turns every Free cell within `radius_m` of an Occupied or Unknown cell
/// (center to center) into Occupied.
OccupancyGrid InflateObstacles(const OccupancyGrid& grid, double radius_m);

/// Whether an 8-connected move from `from` by (d_row, d_col) is allowed:
/// target Free, and a diagonal may not squeeze between two blocked
/// orthogonal neighbors.
bool CanStep(const OccupancyGrid& grid, GridIndex from, int d_row, int d_col);

/// Minimum-cost 8-connected path (straight 1, diagonal sqrt 2) from `start`
/// to `goal`, inclusive. Throws std::invalid_argument for non-Free endpoints
/// and NoPathError when the goal cannot be reached.
std::vector<GridIndex> AStar(const OccupancyGrid& grid, GridIndex start, GridIndex goal);

/// Cells reachable from `start` under CanStep (non-zero entries), row-major.
std::vector<std::uint8_t> ReachableMask(const OccupancyGrid& grid, GridIndex start);

/// Joins consecutive tour cells with A* legs and closes the loop back to the
/// first one. Junction cells appear once.
GlobalPath StitchPath(const OccupancyGrid& grid, std::span<const GridIndex> tour);
GlobalPath StitchPath(const OccupancyGrid& grid, std::span<const Waypoint> tour);

}  // namespace patrolcov
