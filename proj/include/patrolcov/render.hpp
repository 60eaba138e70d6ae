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
#include <span>
#include <string>
#include <vector>

#include "patrolcov/grid.hpp"
#include "patrolcov/path_plan.hpp"
#include "patrolcov/waypoints.hpp"

namespace patrolcov {

struct RenderStyle {
  std::string occupied_color = "#404040";
  std::string free_color = "#ffffff";
  std::string unknown_color = "#a0a0a0";
  std::string explored_color = "#d9d9d9";
  std::string waypoint_color = "#1f4fd8";
  std::string commit_path_color = "#707070";
  std::string final_path_color = "#e02020";
  double commit_path_width = 1.0;
  double final_path_width = 1.5;
  double waypoint_radius = 2.5;
  int scale = 4;  // pixels per cell
};

/// Drops interior cells of straight runs; the first and last cells are kept.
std::vector<GridIndex> CompressColinear(std::span<const GridIndex> cells);

/// SVG document of one planning run: map raster (explored cells tinted),
/// the loop through the waypoints in `commit_order`, the final path and the
/// waypoint markers. Same-colored horizontal cell runs share a rectangle.
/// Throws std::invalid_argument when inputs disagree with `grid`.
std::string RenderPlan(const OccupancyGrid& grid, const CoverageGrid& cov,
                       std::span<const Waypoint> waypoints,
                       std::span<const std::size_t> commit_order,
                       const GlobalPath& final_path, const RenderStyle& style = {});

}  // namespace patrolcov
