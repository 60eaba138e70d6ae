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

// Greedy max-coverage waypoint generation.
//
// Starting from the robot's pose, the planner repeatedly marks the cells the
// sensor sees as explored, collects the explored cells bordering unexplored
// free space as candidates, scores every candidate by the total explored area
// its hypothetical view would leave behind, and commits the best one. It stops
// when candidates run out, enough of the free area is covered, or the relative
// area growth stalls.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "patrolcov/grid.hpp"
#include "patrolcov/sensor.hpp"

namespace patrolcov {

/// Explored-cell overlay on a borrowed OccupancyGrid. The grid must outlive
/// the overlay. Only Free cells can be explored and the set only grows.
class CoverageGrid {
 public:
  explicit CoverageGrid(const OccupancyGrid& base);

  const OccupancyGrid& base() const { return *base_; }

  bool IsExplored(GridIndex idx) const {
    return explored_[base_->Offset(idx)] != 0;
  }
  std::size_t ExploredCount() const { return explored_count_; }
  double ExploredArea() const;
  std::span<const std::uint8_t> explored() const { return explored_; }

  /// Flags the Free cells among `cells`; returns how many were newly flagged.
  std::size_t Mark(std::span<const GridIndex> cells);

  /// Optional mask of cells where waypoints may be placed (non-zero = allowed).
  /// An empty mask allows every Free cell.
  void SetPlacementMask(std::vector<std::uint8_t> mask);
  bool CanPlace(GridIndex idx) const;

 private:
  const OccupancyGrid* base_;
  std::vector<std::uint8_t> explored_;
  std::vector<std::uint8_t> placement_;
  std::size_t explored_count_ = 0;
};

struct Waypoint {
  Pose pose;
  double gained_area = 0.0;  // m^2 newly explored when committed
};

/// Score of one candidate at its best heading. `area` is the total explored
/// area of the hypothetical overlay, `gained_area` the part it adds.
struct CandidateScore {
  Pose candidate;
  double area = 0.0;
  double gained_area = 0.0;
  std::size_t explored_cells = 0;
};

struct StopConfig {
  double min_coverage_fraction = 0.95;
  double epsilon = 0.005;
  int max_iterations = 10000;

  void Validate() const;
};

enum class StopReason { kNoCandidates, kCoverageReached, kSaturated, kIterationLimit };

std::string_view ToString(StopReason reason);

struct WaypointOptions {
  int headings = 8;
  /// Worker threads for candidate scoring; 0 picks the hardware count.
  int threads = 1;
  /// Forwarded to CoverageGrid::SetPlacementMask.
  std::vector<std::uint8_t> placement;
};

/// Log line for one committed waypoint.
struct IterationRecord {
  std::size_t candidate_count = 0;
  CandidateScore selected;
  double area_before = 0.0;
  double area_after = 0.0;
};

struct WaypointPlan {
  std::vector<Waypoint> waypoints;
  CoverageGrid coverage;
  StopReason reason = StopReason::kNoCandidates;
  std::vector<IterationRecord> iterations;
};

/// Marks the cells visible from `pose` and returns the newly explored area.
double MarkExplored(CoverageGrid& cov, const Pose& pose, const SensorModel& sensor);

/// Explored, placeable Free cells 4-adjacent to an unexplored Free cell, in
/// (row, col) order.
std::vector<GridIndex> BoundaryCandidates(const CoverageGrid& cov);

/// Evaluates `headings` evenly spaced headings at `candidate` and returns the
/// best one together with the explored area the overlay would then have.
/// Equal scores keep the smallest heading. `cov` is not modified.
CandidateScore EstimateCoverage(const CoverageGrid& cov, GridIndex candidate,
                                const SensorModel& sensor, int headings);

/// Maximum area; ties go to the smallest (row, col, heading).
CandidateScore SelectNext(std::span<const CandidateScore> scores);

/// Heading k of n evenly spaced headings, wrapped to (-pi, pi].
double CandidateHeading(int k, int headings);

WaypointPlan GenerateWaypoints(const OccupancyGrid& grid, const Pose& start,
                               const SensorModel& sensor, const StopConfig& stop,
                               const WaypointOptions& options = {});

}  // namespace patrolcov
