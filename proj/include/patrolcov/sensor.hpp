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

#include <cstdlib>
#include <numbers>
#include <vector>

#include "patrolcov/grid.hpp"

namespace patrolcov {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Conical range sensor: total angular width `fov` (radians, in (0, 2pi])
/// and maximum perception distance `range` (meters).
struct SensorModel {
  double fov = 2.0 * std::numbers::pi / 3.0;
  double range = 5.0;

  /// Throws std::invalid_argument when the invariants do not hold.
  void Validate() const;
};

/// Grid pose. Heading is measured counterclockwise from the +col axis.
struct Pose {
  GridIndex cell;
  double heading = 0.0;

  friend bool operator==(const Pose&, const Pose&) = default;
};

/// Maps an angle to (-pi, pi].
double WrapAngle(double angle);

/// Walks the Bresenham line from `a` to `b` inclusive, calling
/// `visit(GridIndex)` for each cell until it returns false. Midpoint ties on
/// the minor axis step away from `a`.
template <typename Visit>
void TraceLine(GridIndex a, GridIndex b, Visit&& visit) {
  const int d_row = b.row - a.row;
  const int d_col = b.col - a.col;
  const int step_row = d_row > 0 ? 1 : (d_row < 0 ? -1 : 0);
  const int step_col = d_col > 0 ? 1 : (d_col < 0 ? -1 : 0);
  const int abs_row = std::abs(d_row);
  const int abs_col = std::abs(d_col);

  GridIndex cur = a;
  if (abs_col >= abs_row) {
    int err = 2 * abs_row - abs_col;
    for (int i = 0; i <= abs_col; ++i) {
      if (!visit(cur)) return;
      if (err >= 0) {
        cur.row += step_row;
        err -= 2 * abs_col;
      }
      err += 2 * abs_row;
      cur.col += step_col;
    }
  } else {
    int err = 2 * abs_col - abs_row;
    for (int i = 0; i <= abs_row; ++i) {
      if (!visit(cur)) return;
      if (err >= 0) {
        cur.col += step_col;
        err -= 2 * abs_row;
      }
      err += 2 * abs_col;
      cur.row += step_row;
    }
  }
}

std::vector<GridIndex> BresenhamLine(GridIndex a, GridIndex b);

/// True when no Occupied or Unknown cell lies strictly between `from` and `to`
/// on their Bresenham line. Endpoints are not inspected.
bool LineOfSight(const OccupancyGrid& grid, GridIndex from, GridIndex to);

/// Inclusive angular test of the direction from `from` to `to` against the
/// sensor cone. The origin cell is always inside.
bool WithinFov(GridIndex from, GridIndex to, double heading, double fov);

/// Free cells within `range_m` (center to center) of `from` that have line of
/// sight, ignoring heading. Sorted by (row, col). `from` must be Free.
std::vector<GridIndex> CellsInSight(const OccupancyGrid& grid, GridIndex from,
                                    double range_m);

/// Free cells seen from `pose`: in range, inside the cone, not occluded.
/// Sorted by (row, col). Throws std::invalid_argument if the pose cell is not
/// Free.
std::vector<GridIndex> VisibleCells(const OccupancyGrid& grid, const Pose& pose,
                                    const SensorModel& sensor);

}  // namespace patrolcov
