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

// End-to-end planning: waypoints -> tour -> stitched loop -> metrics, plus
// the on-disk artifact formats.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "patrolcov/grid.hpp"
#include "patrolcov/metrics.hpp"
#include "patrolcov/path_plan.hpp"
#include "patrolcov/sensor.hpp"
#include "patrolcov/tour_opt.hpp"
#include "patrolcov/waypoints.hpp"

namespace patrolcov {

/// Raised for pipeline-level failures (bad start pose, unreachable legs).
class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StartSpec {
  WorldPoint position;
  double heading_deg = 0.0;
};

/// User-facing configuration; angles in degrees.
struct PlanConfig {
  double fov_deg = 120.0;
  double range_m = 5.0;
  StopConfig stop;
  GraspConfig grasp;
  int headings = 8;
  double inflation_radius_m = 0.15;
  VelocityModel velocities;
  /// When unset, the placeable cell nearest the map center is used.
  std::optional<StartSpec> start;
  int threads = 0;
  RotationMode rotation_mode = RotationMode::kPath;

  SensorModel Sensor() const;
  void Validate() const;
};

/// Overlays the keys present in a YAML config document onto `config`.
void ApplyConfigYaml(PlanConfig& config, std::string_view yaml_text);

struct PlanResult {
  Pose start;
  OccupancyGrid inflated;
  WaypointPlan waypoints;
  std::vector<WorldPoint> points;  // waypoint centers, commit order
  double commit_order_length = 0.0;
  Tour tour;
  GlobalPath path;
  MetricsReport metrics;
};

/// Runs the full pipeline on `grid`, which must outlive the result (the
/// coverage overlay refers to it). metrics.computation_time spans the call.
PlanResult RunPlan(const OccupancyGrid& grid, const PlanConfig& config);

/// CSV: index,row,col,world_x,world_y,heading_rad,gained_area_m2,tour_position
std::string WaypointsCsv(const OccupancyGrid& grid, const PlanResult& result);
/// JSON path artifact; deterministic for fixed inputs (no timing fields).
std::string PathJson(const OccupancyGrid& grid, const PlanConfig& config,
                     const PlanResult& result);
/// JSON metrics report including computation time.
std::string MetricsJson(const PlanResult& result);

}  // namespace patrolcov
