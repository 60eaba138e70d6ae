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

#include "patrolcov/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "patrolcov/sensor.hpp"

namespace patrolcov {

namespace {

double SumTurns(std::span<const double> headings, bool closed) {
  double total = 0.0;
  for (std::size_t i = 1; i < headings.size(); ++i) {
    total += std::abs(WrapAngle(headings[i] - headings[i - 1]));
  }
  if (closed && headings.size() >= 2) {
    total += std::abs(WrapAngle(headings.front() - headings.back()));
  }
  return total;
}

}  // namespace

void VelocityModel::Validate() const {
  if (!(v_linear > 0.0) || !(v_angular > 0.0) || !std::isfinite(v_linear) ||
      !std::isfinite(v_angular)) {
    throw std::invalid_argument(fmt::format(
        "velocities must be positive, got linear {} angular {}", v_linear, v_angular));
  }
}

RotationMode ParseRotationMode(std::string_view name) {
  if (name == "path") return RotationMode::kPath;
  if (name == "waypoints") return RotationMode::kWaypoints;
  throw std::invalid_argument(
      fmt::format("unknown rotation mode '{}', expected path or waypoints", name));
}

std::string_view ToString(RotationMode mode) {
  return mode == RotationMode::kPath ? "path" : "waypoints";
}

double PathLength(const GlobalPath& path, double resolution) {
  return CountSteps(path.cells).Cost() * resolution;
}

double CumulativeRotation(std::span<const GridIndex> cells, bool closed) {
  std::vector<double> headings;
  for (std::size_t i = 1; i < cells.size(); ++i) {
    const int dr = cells[i].row - cells[i - 1].row;
    const int dc = cells[i].col - cells[i - 1].col;
    if (dr == 0 && dc == 0) continue;
    headings.push_back(std::atan2(static_cast<double>(dr), static_cast<double>(dc)));
  }
  return SumTurns(headings, closed);
}

double CumulativeRotation(const GlobalPath& path) {
  return CumulativeRotation(path.cells, path.closed);
}

double WaypointRotation(std::span<const WorldPoint> loop) {
  std::vector<double> headings;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const WorldPoint& a = loop[i];
    const WorldPoint& b = loop[(i + 1) % loop.size()];
    if (a == b) continue;
    headings.push_back(std::atan2(b.y - a.y, b.x - a.x));
  }
  return SumTurns(headings, true);
}

double RevisitTime(double path_length, double total_rotation, const VelocityModel& v) {
  v.Validate();
  return path_length / v.v_linear + total_rotation / v.v_angular;
}

double CoveragePercent(const CoverageGrid& cov) {
  const std::size_t free_cells = cov.base().CountState(CellState::kFree);
  if (free_cells == 0) throw std::invalid_argument("map has no Free cells");
  return 100.0 * static_cast<double>(cov.ExploredCount()) /
         static_cast<double>(free_cells);
}

}  // namespace patrolcov
