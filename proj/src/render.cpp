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

#include "patrolcov/render.hpp"

#include <iterator>
#include <stdexcept>

#include <fmt/core.h>
#include <fmt/format.h>

namespace patrolcov {

namespace {

// Pixel coordinates of a cell center; SVG y grows downward, grid rows upward.
struct Pixel {
  double x;
  double y;
};

Pixel CellCenter(const OccupancyGrid& grid, GridIndex c, int scale) {
  return {(c.col + 0.5) * scale, (grid.height() - c.row - 0.5) * scale};
}

void AppendPolyline(std::string& out, const char* id, std::span<const Pixel> pts,
                    const std::string& color, double width) {
  auto it = std::back_inserter(out);
  fmt::format_to(it, "<polyline id=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{:.2f}\" "
                     "stroke-linejoin=\"round\" points=\"",
                 id, color, width);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    fmt::format_to(it, "{}{:.2f},{:.2f}", i == 0 ? "" : " ", pts[i].x, pts[i].y);
  }
  out += "\"/>\n";
}

}  // namespace

std::vector<GridIndex> CompressColinear(std::span<const GridIndex> cells) {
  std::vector<GridIndex> out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i == 0 || i + 1 == cells.size()) {
      out.push_back(cells[i]);
      continue;
    }
    const int in_r = cells[i].row - cells[i - 1].row;
    const int in_c = cells[i].col - cells[i - 1].col;
    const int out_r = cells[i + 1].row - cells[i].row;
    const int out_c = cells[i + 1].col - cells[i].col;
    if (in_r != out_r || in_c != out_c) out.push_back(cells[i]);
  }
  return out;
}

std::string RenderPlan(const OccupancyGrid& grid, const CoverageGrid& cov,
                       std::span<const Waypoint> waypoints,
                       std::span<const std::size_t> commit_order,
                       const GlobalPath& final_path, const RenderStyle& style) {
  if (style.scale < 1) throw std::invalid_argument("render scale must be >= 1");
  const OccupancyGrid& base = cov.base();
  if (base.width() != grid.width() || base.height() != grid.height()) {
    throw std::invalid_argument(fmt::format(
        "coverage grid is {}x{} but map is {}x{}", base.width(), base.height(),
        grid.width(), grid.height()));
  }
  for (const Waypoint& w : waypoints) {
    if (!grid.InBounds(w.pose.cell)) {
      throw std::invalid_argument(
          fmt::format("waypoint {} outside the map", ToString(w.pose.cell)));
    }
  }
  for (std::size_t i : commit_order) {
    if (i >= waypoints.size()) {
      throw std::invalid_argument(fmt::format("commit order index {} out of range", i));
    }
  }
  for (GridIndex c : final_path.cells) {
    if (!grid.InBounds(c)) {
      throw std::invalid_argument(fmt::format("path cell {} outside the map", ToString(c)));
    }
  }

  const int scale = style.scale;
  std::string out;
  auto it = std::back_inserter(out);
  fmt::format_to(it,
                 "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
                 "viewBox=\"0 0 {0} {1}\">\n",
                 grid.width() * scale, grid.height() * scale);

  auto fill_of = [&](GridIndex c) -> const std::string& {
    switch (grid[c]) {
      case CellState::kOccupied:
        return style.occupied_color;
      case CellState::kUnknown:
        return style.unknown_color;
      case CellState::kFree:
        break;
    }
    return cov.IsExplored(c) ? style.explored_color : style.free_color;
  };

  out += "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (int row = grid.height() - 1; row >= 0; --row) {
    const int y = (grid.height() - 1 - row) * scale;
    int run_start = 0;
    for (int col = 1; col <= grid.width(); ++col) {
      if (col < grid.width() && fill_of({row, col}) == fill_of({row, run_start})) continue;
      fmt::format_to(it, "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
                     run_start * scale, y, (col - run_start) * scale, scale,
                     fill_of({row, run_start}));
      run_start = col;
    }
  }
  out += "</g>\n";

  if (!commit_order.empty()) {
    std::vector<Pixel> pts;
    for (std::size_t i : commit_order) {
      pts.push_back(CellCenter(grid, waypoints[i].pose.cell, scale));
    }
    pts.push_back(pts.front());
    AppendPolyline(out, "commit-order", pts, style.commit_path_color,
                   style.commit_path_width);
  }

  if (!final_path.cells.empty()) {
    std::vector<Pixel> pts;
    for (GridIndex c : CompressColinear(final_path.cells)) {
      pts.push_back(CellCenter(grid, c, scale));
    }
    AppendPolyline(out, "final-path", pts, style.final_path_color, style.final_path_width);
  }

  if (!waypoints.empty()) {
    out += "<g id=\"waypoints\">\n";
    for (const Waypoint& w : waypoints) {
      const Pixel p = CellCenter(grid, w.pose.cell, scale);
      fmt::format_to(it, "<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" fill=\"{}\"/>\n",
                     p.x, p.y, style.waypoint_radius, style.waypoint_color);
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace patrolcov
