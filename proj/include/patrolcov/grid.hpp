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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace patrolcov {

/// Raised for malformed map images or metadata.
class MapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CellState : std::uint8_t { kOccupied, kFree, kUnknown };

/// Cell address. Row 0 is the bottom row of the map (world +y grows with row),
/// column 0 the left column (world +x grows with col).
struct GridIndex {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const GridIndex&, const GridIndex&) = default;
};

struct WorldPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const WorldPoint&, const WorldPoint&) = default;
};

/// World pose of the lower-left corner of cell (0, 0). The yaw is carried
/// through from the metadata but, as in the usual map-server convention, the
/// grid itself is axis aligned.
struct MapOrigin {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;

  friend bool operator==(const MapOrigin&, const MapOrigin&) = default;
};

/// Static trinary occupancy map, row-major, immutable after construction.
class OccupancyGrid {
 public:
  OccupancyGrid(int width, int height, double resolution, MapOrigin origin,
                std::vector<CellState> cells);

  /// Uniform grid filled with `fill`.
  static OccupancyGrid Filled(int width, int height, double resolution,
                              CellState fill = CellState::kFree,
                              MapOrigin origin = {});

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  const MapOrigin& origin() const { return origin_; }
  std::span<const CellState> cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }

  bool InBounds(GridIndex idx) const {
    return idx.row >= 0 && idx.row < height_ && idx.col >= 0 &&
           idx.col < width_;
  }
  std::size_t Offset(GridIndex idx) const {
    return static_cast<std::size_t>(idx.row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(idx.col);
  }
  GridIndex IndexOf(std::size_t offset) const {
    return {static_cast<int>(offset / static_cast<std::size_t>(width_)),
            static_cast<int>(offset % static_cast<std::size_t>(width_))};
  }

  /// Unchecked access; callers guarantee InBounds(idx).
  CellState operator[](GridIndex idx) const { return cells_[Offset(idx)]; }
  /// Checked access, throws std::out_of_range.
  CellState At(GridIndex idx) const;

  bool IsFree(GridIndex idx) const {
    return InBounds(idx) && cells_[Offset(idx)] == CellState::kFree;
  }

  std::size_t CountState(CellState state) const;

  /// Returns a copy with one cell changed.
  OccupancyGrid WithCell(GridIndex idx, CellState state) const;

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  int width_;
  int height_;
  double resolution_;
  MapOrigin origin_;
  std::vector<CellState> cells_;
};

/// Decoded 8-bit grayscale raster, top image row first.
struct GrayImage {
  int width = 0;
  int height = 0;
  int max_value = 255;
  std::vector<std::uint8_t> pixels;
};

/// Parses a binary (P5) or ASCII (P2) PGM with max value <= 255.
GrayImage DecodePgm(std::span<const std::uint8_t> bytes);
/// Encodes a binary (P5) PGM.
std::vector<std::uint8_t> EncodePgm(const GrayImage& image);

/// Map metadata in the robot map-server YAML layout.
struct MapMetadata {
  std::string image;
  double resolution = 0.0;
  MapOrigin origin;
  bool negate = false;
  double occupied_thresh = 0.65;
  double free_thresh = 0.196;
  // Optional consistency check against the decoded image.
  std::optional<int> width;
  std::optional<int> height;
};

/// Parses the YAML text of a map metadata file. Required keys: image,
/// resolution, origin. negate and the thresholds fall back to defaults.
MapMetadata ParseMapMetadata(std::string_view yaml_text);

/// Classifies each pixel by occupancy probability p = (max - v) / max
/// (p = v / max when negated): p >= occupied_thresh is Occupied,
/// p <= free_thresh is Free, anything between is Unknown. The bottom image row
/// becomes grid row 0.
OccupancyGrid LoadMap(std::span<const std::uint8_t> image_bytes,
                      const MapMetadata& metadata);

/// Loads a map from its YAML file; the image path resolves relative to it.
OccupancyGrid LoadMapFile(const std::filesystem::path& yaml_path);

/// Free-cell count times the cell area, in m^2.
double FreeArea(const OccupancyGrid& grid);

/// Throws std::out_of_range when the point falls outside the map.
GridIndex WorldToGrid(const OccupancyGrid& grid, WorldPoint p);
/// Metric center of a cell. Throws std::out_of_range for bad indices.
WorldPoint GridToWorld(const OccupancyGrid& grid, GridIndex idx);

std::string ToString(GridIndex idx);

}  // namespace patrolcov
