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

#include <span>
#include <string_view>

#include "patrolcov/grid.hpp"
#include "patrolcov/path_plan.hpp"
#include "patrolcov/waypoints.hpp"

namespace patrolcov {

struct VelocityModel {
  double v_linear = 0.26;   // m/s
  double v_angular = 1.82;  // rad/s

  void Validate() const;
};

struct MetricsReport {
  double path_length = 0.0;       // m
  double total_rotation = 0.0;    // rad
  double revisit_time = 0.0;      // s
  double coverage_percent = 0.0;  // 0..100
  double computation_time = 0.0;  // s, wall clock
};

/// How heading changes are accumulated.
enum class RotationMode {
  kPath,       // every step of the stitched cell path
  kWaypoints,  // only the legs between consecutive tour waypoints
};

RotationMode ParseRotationMode(std::string_view name);
std::string_view ToString(RotationMode mode);

/// Sum of step lengths: `resolution` per straight step, sqrt(2) times that
/// per diagonal step.
double PathLength(const GlobalPath& path, double resolution);

/// Sum of |wrapped heading change| between consecutive steps, plus the turn
/// back onto the first step when the path is closed. Repeated cells are
/// skipped; fewer than two distinct cells give 0.
double CumulativeRotation(const GlobalPath& path);
double CumulativeRotation(std::span<const GridIndex> cells, bool closed);

/// Waypoint-level variant: headings are the straight legs between
/// consecutive points of the closed loop.
double WaypointRotation(std::span<const WorldPoint> loop);

/// l_p / v_linear + theta_total / v_angular.
double RevisitTime(double path_length, double total_rotation, const VelocityModel& v);

/// Percentage of Free cells explored. Throws std::invalid_argument for maps
/// without Free cells.
double CoveragePercent(const CoverageGrid& cov);

}  // namespace patrolcov
