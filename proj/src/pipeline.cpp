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

#include "patrolcov/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include <fmt/core.h>
#include <yaml-cpp/yaml.h>

#include "json.hpp"

namespace patrolcov {

namespace {

double DegToRad(double deg) { return deg * std::numbers::pi / 180.0; }

std::string_view CellStateName(CellState s) {
  switch (s) {
    case CellState::kOccupied:
      return "Occupied";
    case CellState::kFree:
      return "Free";
    case CellState::kUnknown:
      return "Unknown";
  }
  return "?";
}

Pose ResolveStart(const OccupancyGrid& grid, const OccupancyGrid& inflated,
                  const PlanConfig& config) {
  if (config.start) {
    const StartSpec& spec = *config.start;
    GridIndex cell;
    try {
      cell = WorldToGrid(grid, spec.position);
    } catch (const std::out_of_range&) {
      throw PlanError(fmt::format("start position ({}, {}) lies outside the map",
                                  spec.position.x, spec.position.y));
    }
    if (grid[cell] != CellState::kFree) {
      throw PlanError(fmt::format("start position ({}, {}) is in cell {}, which is {}",
                                  spec.position.x, spec.position.y, ToString(cell),
                                  CellStateName(grid[cell])));
    }
    if (!inflated.IsFree(cell)) {
      throw PlanError(fmt::format(
          "start cell {} is within the {} m inflation radius of an obstacle",
          ToString(cell), config.inflation_radius_m));
    }
    return Pose{cell, WrapAngle(DegToRad(spec.heading_deg))};
  }

  const double center_row = grid.height() / 2.0;
  const double center_col = grid.width() / 2.0;
  std::tuple<double, int, int> best{std::numeric_limits<double>::infinity(), 0, 0};
  bool found = false;
  for (int row = 0; row < grid.height(); ++row) {
    for (int col = 0; col < grid.width(); ++col) {
      if (!inflated.IsFree({row, col})) continue;
      const double dr = row + 0.5 - center_row;
      const double dc = col + 0.5 - center_col;
      const std::tuple<double, int, int> key{dr * dr + dc * dc, row, col};
      if (key < best) {
        best = key;
        found = true;
      }
    }
  }
  if (!found) throw PlanError("map has no Free cell clear of the inflation radius");
  return Pose{{std::get<1>(best), std::get<2>(best)}, 0.0};
}

}  // namespace

SensorModel PlanConfig::Sensor() const {
  return SensorModel{DegToRad(fov_deg), range_m};
}

void PlanConfig::Validate() const {
  Sensor().Validate();
  stop.Validate();
  grasp.Validate();
  velocities.Validate();
  if (headings < 1) {
    throw std::invalid_argument(fmt::format("headings must be >= 1, got {}", headings));
  }
  if (!(inflation_radius_m >= 0.0)) {
    throw std::invalid_argument(fmt::format(
        "inflation radius must be non-negative, got {}", inflation_radius_m));
  }
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

void ApplyConfigYaml(PlanConfig& config, std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(fmt::format("config: {}", e.what()));
  }
  if (root.IsNull()) return;
  if (!root.IsMap()) throw std::invalid_argument("config: expected a mapping");

  auto read = [](const YAML::Node& parent, const char* key, auto& target) {
    if (const YAML::Node node = parent[key]) {
      target = node.as<std::remove_reference_t<decltype(target)>>();
    }
  };
  try {
    if (const YAML::Node s = root["sensor"]) {
      read(s, "fov_deg", config.fov_deg);
      read(s, "range_m", config.range_m);
    }
    if (const YAML::Node s = root["stop"]) {
      read(s, "min_coverage", config.stop.min_coverage_fraction);
      read(s, "epsilon", config.stop.epsilon);
      read(s, "max_iterations", config.stop.max_iterations);
    }
    if (const YAML::Node g = root["grasp"]) {
      read(g, "iterations", config.grasp.iterations);
      read(g, "rcl", config.grasp.rcl_size);
      read(g, "seed", config.grasp.seed);
    }
    if (const YAML::Node v = root["velocity"]) {
      read(v, "linear", config.velocities.v_linear);
      read(v, "angular", config.velocities.v_angular);
    }
    if (const YAML::Node s = root["start"]) {
      StartSpec spec;
      spec.position.x = s["x"].as<double>();
      spec.position.y = s["y"].as<double>();
      read(s, "heading_deg", spec.heading_deg);
      config.start = spec;
    }
    read(root, "headings", config.headings);
    read(root, "inflate_m", config.inflation_radius_m);
    read(root, "threads", config.threads);
    if (const YAML::Node m = root["rotation_mode"]) {
      config.rotation_mode = ParseRotationMode(m.as<std::string>());
    }
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(fmt::format("config: {}", e.what()));
  }
}

PlanResult RunPlan(const OccupancyGrid& grid, const PlanConfig& config) {
  config.Validate();
  const auto t0 = std::chrono::steady_clock::now();
  if (grid.CountState(CellState::kFree) == 0) throw PlanError("map has no Free cells");

  OccupancyGrid inflated = InflateObstacles(grid, config.inflation_radius_m);
  const Pose start = ResolveStart(grid, inflated, config);

  WaypointOptions options;
  options.headings = config.headings;
  options.threads = config.threads;
  // Waypoints must be drivable and reachable from the start.
  options.placement = ReachableMask(inflated, start.cell);
  WaypointPlan plan =
      GenerateWaypoints(grid, start, config.Sensor(), config.stop, options);

  std::vector<WorldPoint> points;
  std::vector<std::size_t> commit_order;
  for (const Waypoint& w : plan.waypoints) {
    points.push_back(GridToWorld(grid, w.pose.cell));
    commit_order.push_back(commit_order.size());
  }
  const double commit_length = TourLength(points, commit_order);

  GraspConfig grasp = config.grasp;
  grasp.threads = config.threads;
  Tour tour = GraspOrder(points, grasp);

  std::vector<GridIndex> ordered;
  std::vector<WorldPoint> ordered_points;
  for (std::size_t i : tour.order) {
    ordered.push_back(plan.waypoints[i].pose.cell);
    ordered_points.push_back(points[i]);
  }
  GlobalPath path;
  try {
    path = StitchPath(inflated, ordered);
  } catch (const NoPathError& e) {
    throw PlanError(fmt::format("waypoints unreachable: {}", e.what()));
  }
  const auto t1 = std::chrono::steady_clock::now();

  MetricsReport metrics;
  metrics.path_length = PathLength(path, grid.resolution());
  metrics.total_rotation = config.rotation_mode == RotationMode::kPath
                               ? CumulativeRotation(path)
                               : WaypointRotation(ordered_points);
  metrics.revisit_time =
      RevisitTime(metrics.path_length, metrics.total_rotation, config.velocities);
  metrics.coverage_percent = CoveragePercent(plan.coverage);
  metrics.computation_time = std::chrono::duration<double>(t1 - t0).count();

  return PlanResult{.start = start,
                    .inflated = std::move(inflated),
                    .waypoints = std::move(plan),
                    .points = std::move(points),
                    .commit_order_length = commit_length,
                    .tour = std::move(tour),
                    .path = std::move(path),
                    .metrics = metrics};
}

std::string WaypointsCsv(const OccupancyGrid& grid, const PlanResult& result) {
  const auto& waypoints = result.waypoints.waypoints;
  std::vector<std::size_t> position(waypoints.size());
  for (std::size_t p = 0; p < result.tour.order.size(); ++p) {
    position[result.tour.order[p]] = p;
  }
  std::string out = "index,row,col,world_x,world_y,heading_rad,gained_area_m2,tour_position\n";
  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    const Waypoint& w = waypoints[i];
    const WorldPoint p = GridToWorld(grid, w.pose.cell);
    out += fmt::format("{},{},{},{},{},{},{},{}\n", i, w.pose.cell.row, w.pose.cell.col,
                       p.x, p.y, w.pose.heading, w.gained_area, position[i]);
  }
  return out;
}

std::string PathJson(const OccupancyGrid& grid, const PlanConfig& config,
                     const PlanResult& result) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["resolution"] = grid.resolution();
  doc["origin"] = {grid.origin().x, grid.origin().y, grid.origin().yaw};
  doc["width"] = grid.width();
  doc["height"] = grid.height();
  doc["waypoint_order"] = result.tour.order;
  ordered_json cells = ordered_json::array();
  for (GridIndex c : result.path.cells) cells.push_back({c.row, c.col});
  doc["cells"] = std::move(cells);
  doc["closed"] = result.path.closed;
  doc["segment_offsets"] = result.path.segment_offsets;
  ordered_json waypoints = ordered_json::array();
  for (const Waypoint& w : result.waypoints.waypoints) {
    waypoints.push_back({{"row", w.pose.cell.row},
                         {"col", w.pose.cell.col},
                         {"heading_rad", w.pose.heading}});
  }
  doc["waypoints"] = std::move(waypoints);
  const SensorModel sensor = config.Sensor();
  doc["sensor"] = {{"fov_rad", sensor.fov}, {"range_m", sensor.range}};
  doc["velocity"] = {{"linear", config.velocities.v_linear},
                     {"angular", config.velocities.v_angular}};
  doc["rotation_mode"] = ToString(config.rotation_mode);
  doc["metrics"] = {{"path_length", result.metrics.path_length},
                    {"total_rotation", result.metrics.total_rotation},
                    {"revisit_time", result.metrics.revisit_time},
                    {"coverage_percent", result.metrics.coverage_percent}};
  return doc.dump() + "\n";
}

std::string MetricsJson(const PlanResult& result) {
  nlohmann::ordered_json doc;
  doc["path_length"] = result.metrics.path_length;
  doc["total_rotation"] = result.metrics.total_rotation;
  doc["revisit_time"] = result.metrics.revisit_time;
  doc["coverage_percent"] = result.metrics.coverage_percent;
  doc["computation_time"] = result.metrics.computation_time;
  doc["waypoint_count"] = result.waypoints.waypoints.size();
  doc["stop_reason"] = ToString(result.waypoints.reason);
  doc["commit_order_tour_length"] = result.commit_order_length;
  doc["optimized_tour_length"] = result.tour.length;
  return doc.dump(2) + "\n";
}

}  // namespace patrolcov
