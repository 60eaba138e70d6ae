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

#include "patrolcov/grid.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>

#include <fmt/core.h>
#include <yaml-cpp/yaml.h>

namespace patrolcov {

OccupancyGrid::OccupancyGrid(int width, int height, double resolution,
                             MapOrigin origin, std::vector<CellState> cells)
    : width_(width),
      height_(height),
      resolution_(resolution),
      origin_(origin),
      cells_(std::move(cells)) {
  if (width_ <= 0 || height_ <= 0) {
    throw std::invalid_argument(
        fmt::format("grid dimensions must be positive, got {}x{}", width_,
                    height_));
  }
  if (!(resolution_ > 0.0) || !std::isfinite(resolution_)) {
    throw std::invalid_argument(
        fmt::format("grid resolution must be positive, got {}", resolution_));
  }
  if (cells_.size() !=
      static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_)) {
    throw std::invalid_argument(
        fmt::format("cell array has {} entries, expected {}x{}", cells_.size(),
                    width_, height_));
  }
}

OccupancyGrid OccupancyGrid::Filled(int width, int height, double resolution,
                                    CellState fill, MapOrigin origin) {
  std::size_t n = width > 0 && height > 0
                      ? static_cast<std::size_t>(width) *
                            static_cast<std::size_t>(height)
                      : 0;
  return OccupancyGrid(width, height, resolution, origin,
                       std::vector<CellState>(n, fill));
}

CellState OccupancyGrid::At(GridIndex idx) const {
  if (!InBounds(idx)) {
    throw std::out_of_range(fmt::format("cell {} outside {}x{} grid",
                                        ToString(idx), width_, height_));
  }
  return cells_[Offset(idx)];
}

std::size_t OccupancyGrid::CountState(CellState state) const {
  return static_cast<std::size_t>(
      std::count(cells_.begin(), cells_.end(), state));
}

OccupancyGrid OccupancyGrid::WithCell(GridIndex idx, CellState state) const {
  if (!InBounds(idx)) {
    throw std::out_of_range(fmt::format("cell {} outside grid", ToString(idx)));
  }
  OccupancyGrid copy = *this;
  copy.cells_[Offset(idx)] = state;
  return copy;
}

namespace {

class PgmReader {
 public:
  explicit PgmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then reads an unsigned decimal token.
  int ReadHeaderInt(const char* what) {
    SkipSpaceAndComments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw MapError(fmt::format("PGM header: expected {}", what));
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000L) {
        throw MapError(fmt::format("PGM header: {} too large", what));
      }
      ++pos_;
    }
    return static_cast<int>(value);
  }

  std::string ReadMagic() {
    if (bytes_.size() < 2) throw MapError("PGM: truncated magic number");
    std::string magic{static_cast<char>(bytes_[0]), static_cast<char>(bytes_[1])};
    pos_ = 2;
    return magic;
  }

  // Exactly one whitespace byte separates the header from binary data.
  void ConsumeSingleWhitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw MapError("PGM header: missing whitespace before raster");
    }
    ++pos_;
  }

  std::span<const std::uint8_t> Rest() const { return bytes_.subspan(pos_); }

 private:
  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage DecodePgm(std::span<const std::uint8_t> bytes) {
  PgmReader reader(bytes);
  const std::string magic = reader.ReadMagic();
  if (magic != "P5" && magic != "P2") {
    throw MapError(fmt::format("unsupported image magic '{}', expected P5 or P2",
                               magic));
  }
  GrayImage image;
  image.width = reader.ReadHeaderInt("width");
  image.height = reader.ReadHeaderInt("height");
  image.max_value = reader.ReadHeaderInt("max value");
  if (image.width <= 0 || image.height <= 0) {
    throw MapError("PGM header: zero image dimension");
  }
  if (image.max_value <= 0 || image.max_value > 255) {
    throw MapError(fmt::format("PGM header: max value {} is not 8-bit",
                               image.max_value));
  }
  const std::size_t count = static_cast<std::size_t>(image.width) *
                            static_cast<std::size_t>(image.height);
  image.pixels.reserve(count);

  if (magic == "P5") {
    reader.ConsumeSingleWhitespace();
    auto raster = reader.Rest();
    if (raster.size() < count) {
      throw MapError(fmt::format("PGM raster truncated: {} of {} bytes",
                                 raster.size(), count));
    }
    image.pixels.assign(raster.begin(), raster.begin() + count);
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      int v = reader.ReadHeaderInt("pixel value");
      if (v > image.max_value) {
        throw MapError(fmt::format("PGM pixel {} exceeds max value", v));
      }
      image.pixels.push_back(static_cast<std::uint8_t>(v));
    }
  }
  for (std::uint8_t v : image.pixels) {
    if (v > image.max_value) {
      throw MapError(fmt::format("PGM pixel {} exceeds max value", v));
    }
  }
  return image;
}

std::vector<std::uint8_t> EncodePgm(const GrayImage& image) {
  std::string header = fmt::format("P5\n{} {}\n{}\n", image.width, image.height,
                                   image.max_value);
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels.begin(), image.pixels.end());
  return out;
}

MapMetadata ParseMapMetadata(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw MapError(fmt::format("map metadata: {}", e.what()));
  }
  if (!root.IsMap()) throw MapError("map metadata: expected a mapping");

  auto require = [&](const char* key) {
    YAML::Node node = root[key];
    if (!node) throw MapError(fmt::format("map metadata: missing key '{}'", key));
    return node;
  };

  MapMetadata meta;
  try {
    meta.image = require("image").as<std::string>();
    meta.resolution = require("resolution").as<double>();
    YAML::Node origin = require("origin");
    if (!origin.IsSequence() || origin.size() < 2 || origin.size() > 3) {
      throw MapError("map metadata: origin must be [x, y] or [x, y, yaw]");
    }
    meta.origin.x = origin[0].as<double>();
    meta.origin.y = origin[1].as<double>();
    meta.origin.yaw = origin.size() == 3 ? origin[2].as<double>() : 0.0;
    if (root["negate"]) {
      // The map-server convention writes negate as 0/1.
      const std::string raw = root["negate"].as<std::string>();
      meta.negate = raw == "1" || raw == "true" || raw == "True";
    }
    if (root["occupied_thresh"]) {
      meta.occupied_thresh = root["occupied_thresh"].as<double>();
    }
    if (root["free_thresh"]) meta.free_thresh = root["free_thresh"].as<double>();
    if (root["width"]) meta.width = root["width"].as<int>();
    if (root["height"]) meta.height = root["height"].as<int>();
  } catch (const YAML::Exception& e) {
    throw MapError(fmt::format("map metadata: {}", e.what()));
  }

  if (!(meta.resolution > 0.0) || !std::isfinite(meta.resolution)) {
    throw MapError(fmt::format("map metadata: resolution must be positive, got {}",
                               meta.resolution));
  }
  if (!std::isfinite(meta.origin.x) || !std::isfinite(meta.origin.y)) {
    throw MapError("map metadata: origin must be finite");
  }
  return meta;
}

OccupancyGrid LoadMap(std::span<const std::uint8_t> image_bytes,
                      const MapMetadata& metadata) {
  if (!(metadata.resolution > 0.0)) {
    throw MapError(fmt::format("resolution must be positive, got {}",
                               metadata.resolution));
  }
  if (!(metadata.free_thresh >= 0.0 && metadata.free_thresh < metadata.occupied_thresh &&
        metadata.occupied_thresh <= 1.0)) {
    throw MapError(fmt::format("thresholds need 0 <= free ({}) < occupied ({}) <= 1",
                               metadata.free_thresh, metadata.occupied_thresh));
  }
  const GrayImage image = DecodePgm(image_bytes);
  if ((metadata.width && *metadata.width != image.width) ||
      (metadata.height && *metadata.height != image.height)) {
    throw MapError(fmt::format("image is {}x{} but metadata states {}x{}",
                               image.width, image.height,
                               metadata.width.value_or(image.width),
                               metadata.height.value_or(image.height)));
  }

  const double max_value = image.max_value;
  std::vector<CellState> cells(image.pixels.size());
  for (int img_row = 0; img_row < image.height; ++img_row) {
    const int grid_row = image.height - 1 - img_row;
    for (int col = 0; col < image.width; ++col) {
      const double v = image.pixels[static_cast<std::size_t>(img_row) * image.width + col];
      const double p = metadata.negate ? v / max_value : (max_value - v) / max_value;
      CellState state = CellState::kUnknown;
      if (p >= metadata.occupied_thresh) {
        state = CellState::kOccupied;
      } else if (p <= metadata.free_thresh) {
        state = CellState::kFree;
      }
      cells[static_cast<std::size_t>(grid_row) * image.width + col] = state;
    }
  }
  return OccupancyGrid(image.width, image.height, metadata.resolution,
                       metadata.origin, std::move(cells));
}

namespace {

std::vector<std::uint8_t> ReadBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MapError(fmt::format("cannot open '{}'", path.string()));
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

OccupancyGrid LoadMapFile(const std::filesystem::path& yaml_path) {
  const auto yaml_bytes = ReadBytes(yaml_path);
  const MapMetadata meta = ParseMapMetadata(
      std::string_view(reinterpret_cast<const char*>(yaml_bytes.data()),
                       yaml_bytes.size()));
  std::filesystem::path image_path(meta.image);
  if (image_path.is_relative()) image_path = yaml_path.parent_path() / image_path;
  return LoadMap(ReadBytes(image_path), meta);
}

double FreeArea(const OccupancyGrid& grid) {
  return static_cast<double>(grid.CountState(CellState::kFree)) *
         grid.resolution() * grid.resolution();
}

GridIndex WorldToGrid(const OccupancyGrid& grid, WorldPoint p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw std::out_of_range("world point is not finite");
  }
  const double col = std::floor((p.x - grid.origin().x) / grid.resolution());
  const double row = std::floor((p.y - grid.origin().y) / grid.resolution());
  if (col < 0 || row < 0 || col >= grid.width() || row >= grid.height()) {
    throw std::out_of_range(
        fmt::format("world point ({}, {}) lies outside the map", p.x, p.y));
  }
  return {static_cast<int>(row), static_cast<int>(col)};
}

WorldPoint GridToWorld(const OccupancyGrid& grid, GridIndex idx) {
  if (!grid.InBounds(idx)) {
    throw std::out_of_range(fmt::format("cell {} outside grid", ToString(idx)));
  }
  return {grid.origin().x + (idx.col + 0.5) * grid.resolution(),
          grid.origin().y + (idx.row + 0.5) * grid.resolution()};
}

std::string ToString(GridIndex idx) {
  return fmt::format("({}, {})", idx.row, idx.col);
}

}  // namespace patrolcov
